use std::path::Path;

use radlab_core::analyze::dump_trace;
use radlab_core::net::load_snapshot;
use radlab_core::report::RunManifest;
use radlab_core::synth::load_dataset;
use radlab_core::Result;

pub fn cmd_dump(net_path: &Path, data: &Path, n: usize, out: &Path) -> Result<()> {
    let (net, _) = load_snapshot(net_path)?;
    let ds = load_dataset(data)?;
    let take = n.min(ds.n());
    let files = dump_trace(&net, &ds.samples[..take], out)?;

    let mut manifest = RunManifest::new(
        "dump",
        serde_json::json!({
            "net": net_path.display().to_string(),
            "data": data.display().to_string(),
            "n": take,
        }),
        serde_json::json!({ "data_seed": ds.cfg.seed }),
    );
    for f in &files {
        let rel = f.file_name().unwrap().to_string_lossy().to_string();
        manifest.record(out, &rel)?;
    }
    manifest.write(out)?;
    println!("dumped {} stage files for {take} samples", files.len());
    Ok(())
}
