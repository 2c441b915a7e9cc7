//! Intermediate-representation dumps: one CSV per stage per sample.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::net::{forward, Network};
use crate::synth::{Sample, Shape};

/// Write f_h, f_hb, f_sigma (per layer, suffixed `2` for the second
/// layer), and f_a_mul for each sample. Returns the written paths.
///
/// Columns: `channel,i,value` (1D) or `channel,row,col,value` (2D).
pub fn dump_trace(net: &Network, samples: &[Sample], dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (idx, sample) in samples.iter().enumerate() {
        let trace = forward(net, sample)?;
        debug_assert_eq!(
            trace.recompose(net.head.bias).to_bits(),
            trace.estimate.to_bits()
        );
        for (li, layer) in trace.layers.iter().enumerate() {
            let suffix = if li == 0 { "" } else { "2" };
            for (stage, values) in [
                (format!("f_h{suffix}"), &layer.f_h),
                (format!("f_hb{suffix}"), &layer.f_hb),
                (format!("f_sigma{suffix}"), &layer.f_sigma),
            ] {
                written.push(write_stage(dir, idx, &stage, net.shape, values)?);
            }
        }
        written.push(write_stage(dir, idx, "f_a_mul", net.shape, &trace.f_a_mul)?);
    }
    Ok(written)
}

fn write_stage(
    dir: &Path,
    sample_idx: usize,
    stage: &str,
    shape: Shape,
    values: &[f64],
) -> Result<PathBuf> {
    let path = dir.join(format!("sample{sample_idx:04}_{stage}.csv"));
    let mut w = std::io::BufWriter::new(std::fs::File::create(&path)?);
    let l = shape.len();
    match shape {
        Shape::OneD(_) => {
            writeln!(w, "channel,i,value")?;
            for (j, v) in values.iter().enumerate() {
                writeln!(w, "{},{},{v}", j / l, j % l)?;
            }
        }
        Shape::TwoD(d) => {
            writeln!(w, "channel,row,col,value")?;
            for (j, v) in values.iter().enumerate() {
                let (ch, rest) = (j / l, j % l);
                writeln!(w, "{ch},{},{},{v}", rest / d, rest % d)?;
            }
        }
    }
    w.flush()?;
    Ok(path)
}
