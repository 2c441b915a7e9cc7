//! Batch MSE and its gradients, with L2 penalties on convolution taps and
//! head weights but never on biases.
//!
//! The batch is split into a fixed number of contiguous chunks; chunks are
//! processed independently (possibly in parallel) and their partial sums
//! combined in chunk order, so results are bit-stable for any worker count.

use rayon::prelude::*;

use super::backward::{backward_into, BackwardScratch, Gradients};
use super::forward::{forward_into, ForwardTrace};
use super::network::Network;
use crate::error::Result;
use crate::synth::Sample;

/// Number of reduction chunks; fixed in code, never derived from the
/// thread count.
const N_CHUNKS: usize = 8;

#[derive(Debug, Clone, Copy, Default)]
pub struct L2Coeffs {
    pub conv: f64,
    pub head: f64,
}

struct ChunkSpace {
    trace: ForwardTrace,
    scratch: BackwardScratch,
    grads: Gradients,
    sq_err: f64,
}

/// Reusable per-chunk buffers for repeated batch calls.
pub struct BatchWorkspace {
    chunks: Vec<ChunkSpace>,
}

impl BatchWorkspace {
    pub fn new(net: &Network) -> Self {
        BatchWorkspace {
            chunks: (0..N_CHUNKS)
                .map(|_| ChunkSpace {
                    trace: ForwardTrace::default(),
                    scratch: BackwardScratch::default(),
                    grads: Gradients::zeros_for(net),
                    sq_err: 0.0,
                })
                .collect(),
        }
    }
}

/// Mean squared error over the batch plus gradients (including L2 terms on
/// weights). The returned scalar is the pure MSE without the penalty.
pub fn batched_loss(
    net: &Network,
    batch: &[Sample],
    l2: L2Coeffs,
) -> Result<(f64, Gradients)> {
    let refs: Vec<&Sample> = batch.iter().collect();
    let mut ws = BatchWorkspace::new(net);
    let mut grads = Gradients::zeros_for(net);
    let mse = batched_loss_with(net, &refs, l2, &mut ws, &mut grads)?;
    Ok((mse, grads))
}

/// Workspace-reusing variant for the training hot loop. `grads` is
/// overwritten.
pub fn batched_loss_with(
    net: &Network,
    batch: &[&Sample],
    l2: L2Coeffs,
    ws: &mut BatchWorkspace,
    grads: &mut Gradients,
) -> Result<f64> {
    assert!(!batch.is_empty(), "batch must be nonempty");
    let n = batch.len();
    let upstream_scale = 2.0 / n as f64;

    // Contiguous chunk ranges; the same for every worker count.
    let per = n.div_ceil(N_CHUNKS);
    let ranges: Vec<(usize, usize)> = (0..N_CHUNKS)
        .map(|ci| ((ci * per).min(n), ((ci + 1) * per).min(n)))
        .collect();

    let results: Result<Vec<()>> = ws
        .chunks
        .par_iter_mut()
        .zip(ranges.par_iter())
        .map(|(space, &(lo, hi))| {
            space.grads.reset();
            space.sq_err = 0.0;
            for &sample in &batch[lo..hi] {
                forward_into(net, sample, &mut space.trace)?;
                let err = space.trace.estimate - sample.label_r;
                space.sq_err += err * err;
                backward_into(
                    net,
                    sample,
                    &space.trace,
                    upstream_scale * err,
                    &mut space.grads,
                    &mut space.scratch,
                );
            }
            Ok(())
        })
        .collect();
    results?;

    grads.reset();
    let mut sq_sum = 0.0;
    for space in &ws.chunks {
        sq_sum += space.sq_err;
        grads.add_assign(&space.grads);
    }

    // L2 on weights only; biases are exempt.
    if l2.conv != 0.0 || l2.head != 0.0 {
        let layout = net.layout();
        let flat = net.params_flat();
        for r in [&layout.conv1_taps, &layout.conv2_taps] {
            for i in r.clone() {
                grads.values[i] += 2.0 * l2.conv * flat[i];
            }
        }
        for i in layout.head_weights.clone() {
            grads.values[i] += 2.0 * l2.head * flat[i];
        }
    }

    Ok(sq_sum / n as f64)
}
