use std::path::Path;

use radlab_core::analyze::{evaluate, write_scatter_csv};
use radlab_core::net::load_snapshot;
use radlab_core::report::RunManifest;
use radlab_core::synth::load_dataset;
use radlab_core::Result;

pub fn cmd_eval(net_path: &Path, data: &Path, out: &Path) -> Result<()> {
    let (net, design) = load_snapshot(net_path)?;
    let ds = load_dataset(data)?;
    let report = evaluate(&net, &ds)?;

    std::fs::create_dir_all(out)?;
    write_scatter_csv(&report, &out.join("scatter.csv"))?;
    std::fs::write(
        out.join("report.json"),
        serde_json::to_string_pretty(&serde_json::json!({
            "d": report.d,
            "n": report.pairs.len(),
            "rmse_px": report.rmse_px,
            "rmse_unit": report.rmse_unit(),
            "design": design,
        }))?,
    )?;

    let mut manifest = RunManifest::new(
        "eval",
        serde_json::json!({
            "net": net_path.display().to_string(),
            "data": data.display().to_string(),
            "gen": ds.cfg,
        }),
        serde_json::json!({ "data_seed": ds.cfg.seed }),
    );
    manifest.record(out, "scatter.csv")?;
    manifest.record(out, "report.json")?;
    manifest.write(out)?;

    println!("rmse_px = {:.5} over {} samples", report.rmse_px, report.pairs.len());
    Ok(())
}
