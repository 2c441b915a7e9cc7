//! Forward evaluation with full intermediate capture.
//!
//! Correlation orientation: `f_h[i] = sum_j taps[j] * x[i + j - 2]` with
//! zero padding (2D: both axes). The trace stores every stage the analysis
//! works with: f_h, f_hb, f_sigma per layer, the weighted activation
//! f_a_mul, its ordered sum f_a_sum, and the estimate.

use serde::{Deserialize, Serialize};

use super::activation::Activation;
use super::network::Network;
use crate::error::{Error, Result};
use crate::synth::{Sample, Shape};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LayerTrace {
    pub f_h: Vec<f64>,
    pub f_hb: Vec<f64>,
    pub f_sigma: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ForwardTrace {
    /// One entry per convolution layer, in depth order.
    pub layers: Vec<LayerTrace>,
    /// Elementwise product of head weights and the last activation map.
    pub f_a_mul: Vec<f64>,
    /// Sum of `f_a_mul` in index order.
    pub f_a_sum: f64,
    /// `f_a_sum + head bias`.
    pub estimate: f64,
}

impl ForwardTrace {
    /// Last activation map (input of the head).
    pub fn head_input(&self) -> &[f64] {
        &self.layers.last().expect("trace has at least one layer").f_sigma
    }

    /// Recompute the estimate from the stored stages; must equal
    /// `self.estimate` bitwise.
    pub fn recompose(&self, head_bias: f64) -> f64 {
        let mut s = 0.0;
        for &v in &self.f_a_mul {
            s += v;
        }
        s + head_bias
    }

    fn resize_for(&mut self, net: &Network) {
        let l = net.shape.len();
        let c = net.channels();
        self.layers.resize_with(net.layers(), LayerTrace::default);
        self.layers[0].f_h.resize(c * l, 0.0);
        self.layers[0].f_hb.resize(c * l, 0.0);
        self.layers[0].f_sigma.resize(c * l, 0.0);
        if net.layers() == 2 {
            self.layers[1].f_h.resize(l, 0.0);
            self.layers[1].f_hb.resize(l, 0.0);
            self.layers[1].f_sigma.resize(l, 0.0);
        }
        self.f_a_mul.resize(c * l, 0.0);
    }
}

/// 1D correlation with zero padding, support 5, centre offset 2.
pub(crate) fn correlate_1d(taps: &[f64], x: &[f64], out: &mut [f64]) {
    debug_assert_eq!(taps.len(), 5);
    let d = x.len();
    debug_assert_eq!(out.len(), d);
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (j, &t) in taps.iter().enumerate() {
            let src = i as isize + j as isize - 2;
            if src >= 0 && (src as usize) < d {
                acc += t * x[src as usize];
            }
        }
        *o = acc;
    }
}

/// 2D correlation with zero padding, 5x5 row-major taps, centre offset (2, 2).
pub(crate) fn correlate_2d(taps: &[f64], x: &[f64], d: usize, out: &mut [f64]) {
    debug_assert_eq!(taps.len(), 25);
    debug_assert_eq!(x.len(), d * d);
    debug_assert_eq!(out.len(), d * d);
    out.fill(0.0);
    for i in 0..d {
        let orow = &mut out[i * d..(i + 1) * d];
        for j in 0..5 {
            let ii = i as isize + j as isize - 2;
            if ii < 0 || ii as usize >= d {
                continue;
            }
            let xrow = &x[ii as usize * d..ii as usize * d + d];
            let trow = &taps[j * 5..j * 5 + 5];
            // Interior columns have the full tap row in range.
            let lo = 2.min(d);
            let hi = d.saturating_sub(2).max(lo);
            for k in 0..lo {
                let mut acc = 0.0;
                for (l, &t) in trow.iter().enumerate() {
                    let kk = k as isize + l as isize - 2;
                    if kk >= 0 && (kk as usize) < d {
                        acc += t * xrow[kk as usize];
                    }
                }
                orow[k] += acc;
            }
            for k in lo..hi {
                orow[k] += trow[0] * xrow[k - 2]
                    + trow[1] * xrow[k - 1]
                    + trow[2] * xrow[k]
                    + trow[3] * xrow[k + 1]
                    + trow[4] * xrow[k + 2];
            }
            for k in hi..d {
                let mut acc = 0.0;
                for (l, &t) in trow.iter().enumerate() {
                    let kk = k as isize + l as isize - 2;
                    if kk >= 0 && (kk as usize) < d {
                        acc += t * xrow[kk as usize];
                    }
                }
                orow[k] += acc;
            }
        }
    }
}

fn conv_layer_forward(
    shape: Shape,
    taps: &[Vec<f64>],
    bias: &[f64],
    act: Activation,
    input: &[f64],
    layer: &mut LayerTrace,
) {
    let l = shape.len();
    for (c, t) in taps.iter().enumerate() {
        let out = &mut layer.f_h[c * l..(c + 1) * l];
        match shape {
            Shape::OneD(_) => correlate_1d(t, input, out),
            Shape::TwoD(d) => correlate_2d(t, input, d, out),
        }
        for i in 0..l {
            let z = layer.f_h[c * l + i] + bias[c];
            layer.f_hb[c * l + i] = z;
            layer.f_sigma[c * l + i] = act.apply(z);
        }
    }
}

/// Evaluate the network on a sample, writing every stage into `trace`.
pub fn forward_into(net: &Network, x: &Sample, trace: &mut ForwardTrace) -> Result<()> {
    if x.shape != net.shape {
        return Err(Error::shape(format!(
            "input shape {:?} does not match network shape {:?}",
            x.shape, net.shape
        )));
    }
    trace.resize_for(net);

    conv_layer_forward(
        net.shape,
        &net.conv1.taps,
        &net.conv1.bias,
        net.activation,
        &x.data,
        &mut trace.layers[0],
    );
    if let Some(c2) = &net.conv2 {
        let (first, rest) = trace.layers.split_at_mut(1);
        conv_layer_forward(
            net.shape,
            &c2.taps,
            &c2.bias,
            net.activation,
            &first[0].f_sigma,
            &mut rest[0],
        );
    }

    let act = trace.layers.last().unwrap().f_sigma.clone();
    let mut sum = 0.0;
    for (i, (&w, &a)) in net.head.weights.iter().zip(&act).enumerate() {
        let v = w * a;
        trace.f_a_mul[i] = v;
        sum += v;
    }
    trace.f_a_sum = sum;
    trace.estimate = sum + net.head.bias;
    Ok(())
}

/// Evaluate with a freshly allocated trace.
pub fn forward(net: &Network, x: &Sample) -> Result<ForwardTrace> {
    let mut trace = ForwardTrace::default();
    forward_into(net, x, &mut trace)?;
    Ok(trace)
}

/// Estimate only (allocates a scratch trace internally).
pub fn forward_estimate(net: &Network, x: &Sample) -> Result<f64> {
    Ok(forward(net, x)?.estimate)
}
