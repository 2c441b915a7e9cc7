//! Exact reverse-mode gradients of the estimate with respect to every
//! weight and bias, laid out flat to match [`Network::params_flat`].

use super::forward::{correlate_1d, forward, ForwardTrace};
use super::network::{Network, ParamLayout};
use crate::error::Result;
use crate::synth::{Sample, Shape};

/// Flat gradient vector; indices follow the network's [`ParamLayout`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub values: Vec<f64>,
}

impl Gradients {
    pub fn zeros_for(net: &Network) -> Self {
        Gradients {
            values: vec![0.0; net.n_params()],
        }
    }

    pub fn reset(&mut self) {
        self.values.fill(0.0);
    }

    /// Elementwise accumulate (used for ordered chunk reduction).
    pub fn add_assign(&mut self, other: &Gradients) {
        debug_assert_eq!(self.values.len(), other.values.len());
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += b;
        }
    }
}

/// Reusable buffers for one backward pass.
#[derive(Debug, Default)]
pub struct BackwardScratch {
    g_hb: Vec<f64>,
    g_hb1: Vec<f64>,
    g_prev: Vec<f64>,
    flipped: Vec<f64>,
}

/// Accumulate `upstream * d(estimate)/d(theta)` into `grads`.
pub fn backward_into(
    net: &Network,
    x: &Sample,
    trace: &ForwardTrace,
    upstream: f64,
    grads: &mut Gradients,
    scratch: &mut BackwardScratch,
) {
    let layout = net.layout();
    let l = net.shape.len();
    let c = net.channels();
    let g = &mut grads.values;

    // Head.
    let last_sigma = &trace.layers.last().unwrap().f_sigma;
    for (i, &a) in last_sigma.iter().enumerate() {
        g[layout.head_weights.start + i] += upstream * a;
    }
    g[layout.head_bias] += upstream;

    // Into the last activation map, then through its nonlinearity.
    let last_hb = &trace.layers.last().unwrap().f_hb;
    scratch.g_hb.resize(last_hb.len(), 0.0);
    for i in 0..last_hb.len() {
        scratch.g_hb[i] =
            upstream * net.head.weights[i] * net.activation.derivative(last_hb[i]);
    }

    if let Some(c2) = &net.conv2 {
        // Second layer (1D, single channel): parameter grads plus the
        // gradient flowing into the first activation map.
        let sigma1 = &trace.layers[0].f_sigma;
        let (taps2, bias2) = split_taps_bias(g, &layout.conv2_taps, &layout.conv2_bias);
        accumulate_conv_grads(net.shape, &scratch.g_hb, sigma1, 1, taps2, bias2);
        // d f_h2 / d y is the tap value at the mirrored offset, so the
        // input gradient is a correlation with the flipped kernel.
        scratch.flipped.clear();
        scratch.flipped.extend(c2.taps[0].iter().rev());
        scratch.g_prev.resize(l, 0.0);
        correlate_1d(&scratch.flipped, &scratch.g_hb, &mut scratch.g_prev);

        let hb1 = &trace.layers[0].f_hb;
        scratch.g_hb1.resize(l, 0.0);
        for i in 0..l {
            scratch.g_hb1[i] = scratch.g_prev[i] * net.activation.derivative(hb1[i]);
        }
        let (taps1, bias1) = split_taps_bias(g, &layout.conv1_taps, &layout.conv1_bias);
        accumulate_conv_grads(net.shape, &scratch.g_hb1, &x.data, 1, taps1, bias1);
    } else {
        let (taps1, bias1) = split_taps_bias(g, &layout.conv1_taps, &layout.conv1_bias);
        accumulate_conv_grads(net.shape, &scratch.g_hb, &x.data, c, taps1, bias1);
    }
}

/// One-shot gradients of the estimate (runs its own forward pass).
pub fn backward(net: &Network, x: &Sample, upstream: f64) -> Result<Gradients> {
    let trace = forward(net, x)?;
    let mut grads = Gradients::zeros_for(net);
    let mut scratch = BackwardScratch::default();
    backward_into(net, x, &trace, upstream, &mut grads, &mut scratch);
    Ok(grads)
}

/// Disjoint mutable views of the tap and bias ranges (taps end where the
/// biases start in the flat layout).
fn split_taps_bias<'a>(
    g: &'a mut [f64],
    taps: &std::ops::Range<usize>,
    bias: &std::ops::Range<usize>,
) -> (&'a mut [f64], &'a mut [f64]) {
    debug_assert_eq!(taps.end, bias.start);
    let (head, tail) = g.split_at_mut(bias.start);
    (&mut head[taps.start..], &mut tail[..bias.end - bias.start])
}

/// Tap and bias gradients for one correlation layer. `g_hb` is the
/// gradient at the pre-activation (length channels * len(input)); every
/// channel reads the same `input`.
fn accumulate_conv_grads(
    shape: Shape,
    g_hb: &[f64],
    input: &[f64],
    channels: usize,
    g_taps: &mut [f64],
    g_bias: &mut [f64],
) {
    let l = shape.len();
    let support = match shape {
        Shape::OneD(_) => 5,
        Shape::TwoD(_) => 25,
    };
    for ch in 0..channels {
        let gch = &g_hb[ch * l..(ch + 1) * l];
        g_bias[ch] += gch.iter().sum::<f64>();
        let gt = &mut g_taps[ch * support..(ch + 1) * support];
        match shape {
            Shape::OneD(d) => {
                for (j, slot) in gt.iter_mut().enumerate() {
                    let off = j as isize - 2;
                    let i0 = (-off).max(0) as usize;
                    let i1 = (d as isize - off.max(0)) as usize;
                    let mut acc = 0.0;
                    for i in i0..i1 {
                        acc += gch[i] * input[(i as isize + off) as usize];
                    }
                    *slot += acc;
                }
            }
            Shape::TwoD(d) => {
                for j in 0..5usize {
                    let dy = j as isize - 2;
                    let i0 = (-dy).max(0) as usize;
                    let i1 = (d as isize - dy.max(0)) as usize;
                    for ll in 0..5usize {
                        let dx = ll as isize - 2;
                        let k0 = (-dx).max(0) as usize;
                        let k1 = (d as isize - dx.max(0)) as usize;
                        let mut acc = 0.0;
                        for i in i0..i1 {
                            let ii = (i as isize + dy) as usize;
                            let grow = &gch[i * d + k0..i * d + k1];
                            let xrow = &input[(ii * d as usize) + (k0 as isize + dx) as usize
                                ..(ii * d) + (k1 as isize + dx) as usize];
                            acc += grow.iter().zip(xrow).map(|(a, b)| a * b).sum::<f64>();
                        }
                        gt[j * 5 + ll] += acc;
                    }
                }
            }
        }
    }
}

/// Central finite difference of the estimate w.r.t. parameter `idx`.
pub fn finite_difference(net: &Network, x: &Sample, idx: usize, h: f64) -> Result<f64> {
    let mut flat = net.params_flat();
    let orig = flat[idx];
    let mut probe = net.clone();
    flat[idx] = orig + h;
    probe.set_params_flat(&flat);
    let up = forward(&probe, x)?.estimate;
    flat[idx] = orig - h;
    probe.set_params_flat(&flat);
    let down = forward(&probe, x)?.estimate;
    Ok((up - down) / (2.0 * h))
}

/// Relative error with a floor so near-zero pairs compare absolutely.
pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-6)
}

/// Max relative error between reverse-mode and central finite differences
/// over every parameter of the network.
pub fn grad_check_max_rel_err(net: &Network, x: &Sample, h: f64) -> Result<f64> {
    let grads = backward(net, x, 1.0)?;
    let mut worst = 0.0f64;
    for idx in 0..net.n_params() {
        let fd = finite_difference(net, x, idx, h)?;
        worst = worst.max(rel_err(grads.values[idx], fd));
    }
    Ok(worst)
}

impl ParamLayout {
    /// Convenience accessors for tests and diagnostics.
    pub fn conv1_tap(&self, channel: usize, tap: usize) -> usize {
        self.conv1_taps.start + channel * self.support + tap
    }
}
