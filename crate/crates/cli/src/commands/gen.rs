use std::path::Path;

use radlab_core::report::RunManifest;
use radlab_core::rng::stream;
use radlab_core::synth::{gen_split, write_dataset};
use radlab_core::Result;

use crate::config::GenFile;

pub fn cmd_gen(config_path: &Path, out: &Path, seed: Option<u64>) -> Result<()> {
    let file = GenFile::load(config_path)?;
    let cfg = file.resolve(seed)?;
    std::fs::create_dir_all(out)?;

    let mut manifest = RunManifest::new(
        "gen",
        serde_json::to_value(&cfg)?,
        serde_json::json!({ "seed": cfg.seed }),
    );

    if let Some(splits) = file.splits {
        for (name, n, base) in [
            ("train", splits.train, stream::TRAIN_BASE),
            ("val", splits.val, stream::VAL_BASE),
            ("test", splits.test, stream::TEST_BASE),
        ] {
            let ds = gen_split(&cfg, n, base)?;
            let sub = out.join(name);
            write_dataset(&ds, &sub)?;
            for rel in ["params.csv", "data.bin", "meta.json"] {
                manifest.record(out, &format!("{name}/{rel}"))?;
            }
            println!("wrote {} samples to {}", n, sub.display());
        }
    } else {
        let n = file.n.expect("validated by GenFile::load");
        let ds = gen_split(&cfg, n, stream::SINGLE_BASE)?;
        write_dataset(&ds, out)?;
        for rel in ["params.csv", "data.bin", "meta.json"] {
            manifest.record(out, rel)?;
        }
        println!("wrote {} samples to {}", n, out.display());
    }

    manifest.write(out)
}
