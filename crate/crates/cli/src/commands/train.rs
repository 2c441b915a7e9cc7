use std::io::Write;
use std::path::Path;

use radlab_core::net::save_snapshot;
use radlab_core::report::hash::sha256_file;
use radlab_core::report::RunManifest;
use radlab_core::synth::load_dataset;
use radlab_core::train::train;
use radlab_core::{Error, Result};

use crate::config::TrainFile;

pub fn cmd_train(config_path: &Path, data: &Path, out: &Path, seed: Option<u64>) -> Result<()> {
    let file = TrainFile::load(config_path)?;
    let train_dir = data.join("train");
    let val_dir = data.join("val");
    if !train_dir.is_dir() || !val_dir.is_dir() {
        return Err(Error::Artifact {
            path: data.display().to_string(),
            reason: "expected a bundle with train/ and val/ subdirectories (generate with [splits])"
                .to_string(),
        });
    }
    let train_set = load_dataset(&train_dir)?;
    let val_set = load_dataset(&val_dir)?;

    let spec = file.net_spec(&train_set.cfg)?;
    let cfg = file.train_config(seed)?;

    let outcome = train(&cfg, &spec, &train_set, &val_set)?;

    std::fs::create_dir_all(out)?;
    save_snapshot(&outcome.best, None, &out.join("net.json"))?;
    save_snapshot(&outcome.last, None, &out.join("net_last.json"))?;
    {
        let mut w = std::io::BufWriter::new(std::fs::File::create(out.join("history.csv"))?);
        writeln!(w, "epoch,train_mse,val_mse")?;
        for (e, (tr, va)) in outcome
            .history
            .train_mse
            .iter()
            .zip(&outcome.history.val_mse)
            .enumerate()
        {
            writeln!(w, "{e},{tr},{va}")?;
        }
        w.flush()?;
    }

    let dataset_hash = sha256_file(&train_dir.join("data.bin"))?;
    let mut manifest = RunManifest::new(
        "train",
        serde_json::json!({
            "gen": train_set.cfg,
            "net_spec": spec,
            "train": cfg,
            "n_train": train_set.n(),
            "n_val": val_set.n(),
            "dataset_sha256": dataset_hash,
        }),
        serde_json::json!({
            "data_seed": train_set.cfg.seed,
            "init_seed": cfg.init_seed,
            "shuffle_seed": cfg.shuffle_seed,
        }),
    );
    for rel in ["net.json", "net_last.json", "history.csv"] {
        manifest.record(out, rel)?;
    }
    manifest.write(out)?;

    println!(
        "trained {} epochs; best val MSE {:.3e} at epoch {}; wall {:.1}s",
        outcome.history.train_mse.len(),
        outcome.history.val_mse[outcome.history.best_epoch],
        outcome.history.best_epoch,
        outcome.history.wall_secs
    );
    Ok(())
}
