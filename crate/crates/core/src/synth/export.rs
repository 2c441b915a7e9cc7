//! On-disk dataset format: `params.csv` (idx,r,b,f,polarity), `data.bin`
//! (little-endian f64, sample-major, row-major within a sample) and
//! `meta.json` with the full resolved config, seed, and content hashes.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::dataset::Dataset;
use super::params::{GenConfig, SignalParams};
use super::signal::{Sample, Shape};
use crate::error::{Error, Result};
use crate::report::hash::sha256_file;

pub const DATASET_FORMAT: &str = "radlab-dataset-v1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatasetMeta {
    pub format: String,
    pub gen: GenConfig,
    pub n: usize,
    pub stream_base: u64,
    pub sha256_data: String,
    pub sha256_params: String,
}

/// Write a dataset into `dir`, returning its metadata.
pub fn write_dataset(ds: &Dataset, dir: &Path) -> Result<DatasetMeta> {
    fs::create_dir_all(dir)?;

    let params_path = dir.join("params.csv");
    {
        let mut w = BufWriter::new(fs::File::create(&params_path)?);
        writeln!(w, "idx,r,b,f,polarity")?;
        for (i, s) in ds.samples.iter().enumerate() {
            writeln!(
                w,
                "{i},{},{},{},{}",
                fmt_f64(s.params.r),
                fmt_f64(s.params.b),
                fmt_f64(s.params.f),
                s.params.polarity
            )?;
        }
        w.flush()?;
    }

    let data_path = dir.join("data.bin");
    {
        let mut w = BufWriter::new(fs::File::create(&data_path)?);
        for s in &ds.samples {
            for &v in &s.data {
                w.write_all(&v.to_le_bytes())?;
            }
        }
        w.flush()?;
    }

    let meta = DatasetMeta {
        format: DATASET_FORMAT.to_string(),
        gen: ds.cfg,
        n: ds.n(),
        stream_base: ds.stream_base,
        sha256_data: sha256_file(&data_path)?,
        sha256_params: sha256_file(&params_path)?,
    };
    fs::write(dir.join("meta.json"), serde_json::to_string_pretty(&meta)?)?;
    Ok(meta)
}

/// Load a dataset previously written by [`write_dataset`].
pub fn load_dataset(dir: &Path) -> Result<Dataset> {
    let meta_path = dir.join("meta.json");
    let meta: DatasetMeta = serde_json::from_str(&fs::read_to_string(&meta_path)?)?;
    if meta.format != DATASET_FORMAT {
        return Err(Error::Artifact {
            path: meta_path.display().to_string(),
            reason: format!("unsupported format '{}'", meta.format),
        });
    }
    let shape = Shape::new(meta.gen.dims, meta.gen.d)?;
    let sample_len = shape.len();

    let params = read_params_csv(&dir.join("params.csv"), meta.n)?;

    let data_path = dir.join("data.bin");
    let bytes = fs::read(&data_path)?;
    let expected = meta.n * sample_len * 8;
    if bytes.len() != expected {
        return Err(Error::Artifact {
            path: data_path.display().to_string(),
            reason: format!("size {} bytes, expected {expected}", bytes.len()),
        });
    }

    let samples = params
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let start = i * sample_len * 8;
            let data = bytes[start..start + sample_len * 8]
                .chunks_exact(8)
                .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
                .collect();
            Sample {
                shape,
                data,
                label_r: p.r,
                params: p,
            }
        })
        .collect();

    Ok(Dataset {
        cfg: meta.gen,
        stream_base: meta.stream_base,
        samples,
    })
}

fn read_params_csv(path: &Path, n: usize) -> Result<Vec<SignalParams>> {
    let text = fs::read_to_string(path)?;
    let bad = |reason: String| Error::Artifact {
        path: path.display().to_string(),
        reason,
    };
    let mut lines = text.lines();
    match lines.next() {
        Some("idx,r,b,f,polarity") => {}
        other => return Err(bad(format!("unexpected header {other:?}"))),
    }
    let mut out = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(bad(format!("row {i}: expected 5 fields")));
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse::<f64>().map_err(|e| bad(format!("row {i}: {e}")))
        };
        out.push(SignalParams {
            r: parse(fields[1])?,
            b: parse(fields[2])?,
            f: parse(fields[3])?,
            polarity: fields[4].parse::<i8>().map_err(|e| bad(format!("row {i}: {e}")))?,
        });
    }
    if out.len() != n {
        return Err(bad(format!("{} rows, metadata says {n}", out.len())));
    }
    Ok(out)
}

/// Shortest round-trip decimal representation.
pub(crate) fn fmt_f64(v: f64) -> String {
    let mut buf = ryu_like(v);
    if !buf.contains('.') && !buf.contains('e') && !buf.contains("inf") && !buf.contains("nan") {
        buf.push_str(".0");
    }
    buf
}

fn ryu_like(v: f64) -> String {
    // `{}` on f64 already produces the shortest representation that parses
    // back to the same bits.
    format!("{v}")
}
