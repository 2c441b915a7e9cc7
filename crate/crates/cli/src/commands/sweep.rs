use std::path::Path;

use radlab_core::analyze::{
    classify_filter, cut_profile, sweep_manifold, write_profile_csv, write_sweep_csv, SweepMode,
};
use radlab_core::net::load_snapshot;
use radlab_core::report::RunManifest;
use radlab_core::synth::PolarityMode;
use radlab_core::{Error, Result};

#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep(
    net_path: &Path,
    mode: &str,
    f: Option<f64>,
    b: Option<f64>,
    r: Option<f64>,
    delta: Option<f64>,
    polarity: &str,
    out: &Path,
) -> Result<()> {
    let (net, _) = load_snapshot(net_path)?;
    let delta = delta.unwrap_or(50.0 / 255.0);
    let trained_polarity = match polarity {
        "both" => PolarityMode::Both,
        "positive_only" => PolarityMode::PositiveOnly,
        other => {
            return Err(Error::UnknownName {
                kind: "polarity",
                name: other.to_string(),
                known: "both, positive_only".to_string(),
            })
        }
    };
    // Reference figure settings: intensities (0.6, 0.2); radius 10 grid
    // pixels at the reference resolution.
    let mode = match mode {
        "fixed_intensity" => SweepMode::FixedIntensity {
            f: f.unwrap_or(0.6),
            b: b.unwrap_or(0.2),
        },
        "fixed_radius" => SweepMode::FixedRadius {
            r: r.unwrap_or(10.0 / net.shape.d() as f64),
        },
        other => {
            return Err(Error::UnknownName {
                kind: "sweep mode",
                name: other.to_string(),
                known: "fixed_intensity, fixed_radius".to_string(),
            })
        }
    };

    let points = sweep_manifold(&net, mode.clone(), delta, 0.1, trained_polarity)?;
    std::fs::create_dir_all(out)?;
    write_sweep_csv(&points, &out.join("sweep.csv"))?;

    let mut manifest = RunManifest::new(
        "sweep",
        serde_json::json!({
            "net": net_path.display().to_string(),
            "mode": mode,
            "delta": delta,
            "trained_polarity": trained_polarity,
        }),
        serde_json::json!({}),
    );
    manifest.record(out, "sweep.csv")?;

    // For 2D networks also export the head cut profile along each
    // channel's filter orientation.
    if net.shape.dims() == 2 {
        let d = net.shape.d();
        for ch in 0..net.channels() {
            let report = classify_filter(&net.conv1.taps[ch]);
            let angle = report.orientation.unwrap_or(0.0);
            let head = &net.head.weights[ch * d * d..(ch + 1) * d * d];
            let profile = cut_profile(head, d, angle)?;
            let name = format!("cut_profile_ch{ch}.csv");
            write_profile_csv(&profile, &out.join(&name))?;
            manifest.record(out, &name)?;
        }
    }
    manifest.write(out)?;
    println!("swept {} grid points", points.len());
    Ok(())
}
