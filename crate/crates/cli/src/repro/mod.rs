//! Canned reproduction pipelines, one per reported table or figure,
//! registered by name. Each pipeline trains its cells through the shared
//! experiment protocol, exports per-cell artifacts, and emits a
//! machine-readable comparison file (paper value, obtained value,
//! tolerance, pass/fail).

mod tables;

use std::io::Write;
use std::path::Path;

use radlab_core::report::RunManifest;
use radlab_core::{Error, Result};

pub use tables::{FigD, Table1, Table2, Table3};

#[derive(Debug, Clone)]
pub struct ReproRow {
    pub experiment: String,
    pub metric: String,
    pub paper_value: Option<f64>,
    pub obtained: f64,
    /// Human-readable acceptance rule, e.g. "|obtained-paper| <= 0.25".
    pub tolerance: String,
    pub pass: bool,
}

pub trait ReproPipeline: Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Run every sub-experiment, writing artifacts under `out`.
    fn run(&self, out: &Path) -> Result<Vec<ReproRow>>;
}

pub fn pipeline_registry() -> &'static [&'static dyn ReproPipeline] {
    &[&Table1, &Table2, &Table3, &FigD]
}

pub fn pipeline_by_name(name: &str) -> Result<&'static dyn ReproPipeline> {
    pipeline_registry()
        .iter()
        .find(|p| p.name() == name)
        .copied()
        .ok_or_else(|| Error::UnknownName {
            kind: "repro pipeline",
            name: name.to_string(),
            known: pipeline_registry()
                .iter()
                .map(|p| p.name())
                .collect::<Vec<_>>()
                .join(", "),
        })
}

/// Run a pipeline into `out`; returns whether every comparison passed.
pub fn cmd_repro(table: &str, out: &Path) -> Result<bool> {
    let pipeline = pipeline_by_name(table)?;
    std::fs::create_dir_all(out)?;
    let rows = pipeline.run(out)?;

    let comparison = out.join("comparison.csv");
    {
        let mut w = std::io::BufWriter::new(std::fs::File::create(&comparison)?);
        writeln!(w, "experiment,metric,paper_value,obtained,tolerance,pass")?;
        for r in &rows {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                r.experiment,
                r.metric,
                r.paper_value.map(|v| v.to_string()).unwrap_or_default(),
                r.obtained,
                r.tolerance,
                r.pass
            )?;
        }
        w.flush()?;
    }

    let all_pass = rows.iter().all(|r| r.pass);
    let mut manifest = RunManifest::new(
        "repro",
        serde_json::json!({ "table": table, "description": pipeline.description() }),
        serde_json::json!({
            "data_seed": radlab_core::protocol::DATA_SEED,
            "init_seed": radlab_core::protocol::INIT_SEED,
            "shuffle_seed": radlab_core::protocol::SHUFFLE_SEED,
        }),
    );
    record_tree(&mut manifest, out, out)?;
    manifest.write(out)?;

    for r in &rows {
        println!(
            "{}: {} = {:.5} {} [{}]",
            r.experiment,
            r.metric,
            r.obtained,
            r.paper_value
                .map(|v| format!("(paper {v})"))
                .unwrap_or_default(),
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    Ok(all_pass)
}

/// Record every CSV/JSON artifact below `dir` (excluding the manifest).
fn record_tree(manifest: &mut RunManifest, root: &Path, dir: &Path) -> Result<()> {
    let mut entries: Vec<_> = std::fs::read_dir(dir)?.collect::<std::io::Result<_>>()?;
    entries.sort_by_key(|e| e.path());
    for entry in entries {
        let path = entry.path();
        if path.is_dir() {
            record_tree(manifest, root, &path)?;
        } else {
            let rel = path.strip_prefix(root).unwrap().to_string_lossy().to_string();
            if rel == "manifest.json" {
                continue;
            }
            manifest.record(root, &rel)?;
        }
    }
    Ok(())
}
