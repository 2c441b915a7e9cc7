use std::path::Path;

use radlab_core::design::{design_by_name, DesignConfig};
use radlab_core::net::save_snapshot;
use radlab_core::report::RunManifest;
use radlab_core::Result;

pub fn cmd_design(
    kind: &str,
    d: usize,
    delta: Option<f64>,
    alpha: Option<f64>,
    tau: Option<f64>,
    k: Option<usize>,
    out: &Path,
) -> Result<()> {
    let design = design_by_name(kind)?;
    let mut cfg = DesignConfig::new(d);
    if let Some(v) = delta {
        cfg.delta = v;
    }
    if let Some(v) = alpha {
        cfg.alpha = v;
    }
    if let Some(v) = tau {
        cfg.tau = v;
    }
    if let Some(v) = k {
        cfg.k = v;
    }
    let designed = design.build(&cfg)?;

    std::fs::create_dir_all(out)?;
    save_snapshot(&designed.net, Some(&designed.provenance), &out.join("net.json"))?;

    let mut manifest = RunManifest::new(
        "design",
        serde_json::json!({
            "kind": kind,
            "design": cfg,
            "calibration": {
                "slope": designed.calibration.slope,
                "offset": designed.calibration.offset,
                "drop_mass": designed.calibration.drop_mass,
                "residual": designed.calibration.residual,
                "radii": designed.calibration.radii,
            },
        }),
        serde_json::json!({}),
    );
    manifest.record(out, "net.json")?;
    manifest.write(out)?;

    println!(
        "designed {} network at d = {d} (calibration residual {:.2e})",
        designed.provenance, designed.calibration.residual
    );
    Ok(())
}
