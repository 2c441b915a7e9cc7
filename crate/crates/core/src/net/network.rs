//! Network container, shape validation, and the flat parameter layout
//! used by optimizers and finite-difference checks.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::activation::Activation;
use crate::error::{Error, Result};
use crate::synth::Shape;

/// Correlation support per axis.
pub const SUPPORT_1D: usize = 5;
pub const SUPPORT_2D: usize = 25;

/// One correlation layer: per-channel taps (correlation, not convolution,
/// orientation) and per-channel additive bias. Padding is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvLayer {
    /// `taps[c]` has length 5 (1D) or 25 (2D, row-major 5x5).
    pub taps: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
}

impl ConvLayer {
    pub fn zeros(channels: usize, support: usize) -> Self {
        ConvLayer {
            taps: vec![vec![0.0; support]; channels],
            bias: vec![0.0; channels],
        }
    }

    pub fn channels(&self) -> usize {
        self.taps.len()
    }
}

/// Fully connected head mapping the activation map to a scalar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseHead {
    /// Length C * D (1D) or C * D^2 (2D), channel-major then row-major.
    pub weights: Vec<f64>,
    pub bias: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Network {
    pub shape: Shape,
    pub conv1: ConvLayer,
    /// Depth-2 variant; 1D and single channel only.
    pub conv2: Option<ConvLayer>,
    pub activation: Activation,
    pub head: DenseHead,
}

impl Network {
    /// All-zero network of the given geometry.
    pub fn zeros(shape: Shape, channels: usize, two_layers: bool, activation: Activation) -> Self {
        let support = Self::support_for(shape);
        Network {
            shape,
            conv1: ConvLayer::zeros(channels, support),
            conv2: if two_layers {
                Some(ConvLayer::zeros(1, support))
            } else {
                None
            },
            activation,
            head: DenseHead {
                weights: vec![0.0; channels * shape.len()],
                bias: 0.0,
            },
        }
    }

    pub fn support_for(shape: Shape) -> usize {
        match shape {
            Shape::OneD(_) => SUPPORT_1D,
            Shape::TwoD(_) => SUPPORT_2D,
        }
    }

    pub fn channels(&self) -> usize {
        self.conv1.channels()
    }

    pub fn layers(&self) -> usize {
        if self.conv2.is_some() {
            2
        } else {
            1
        }
    }

    /// Activation-map size feeding the head.
    pub fn head_len(&self) -> usize {
        self.channels() * self.shape.len()
    }

    pub fn validate(&self) -> Result<()> {
        self.activation.validate()?;
        let support = Self::support_for(self.shape);
        let check_layer = |name: &str, layer: &ConvLayer| -> Result<()> {
            if layer.taps.is_empty() {
                return Err(Error::shape(format!("{name}: no channels")));
            }
            if layer.bias.len() != layer.taps.len() {
                return Err(Error::shape(format!(
                    "{name}: {} biases for {} channels",
                    layer.bias.len(),
                    layer.taps.len()
                )));
            }
            for (c, t) in layer.taps.iter().enumerate() {
                if t.len() != support {
                    return Err(Error::shape(format!(
                        "{name} channel {c}: {} taps, expected {support}",
                        t.len()
                    )));
                }
            }
            Ok(())
        };
        check_layer("conv1", &self.conv1)?;
        if let Some(c2) = &self.conv2 {
            if self.shape.dims() != 1 {
                return Err(Error::shape("conv2 requires a 1D network"));
            }
            if self.channels() != 1 || c2.channels() != 1 {
                return Err(Error::shape("conv2 requires a single channel"));
            }
            check_layer("conv2", c2)?;
        }
        if self.head.weights.len() != self.head_len() {
            return Err(Error::shape(format!(
                "head has {} weights, activation map has {}",
                self.head.weights.len(),
                self.head_len()
            )));
        }
        Ok(())
    }

    /// Flat parameter layout: conv1 taps (channel-major), conv1 biases,
    /// conv2 taps, conv2 biases, head weights, head bias.
    pub fn layout(&self) -> ParamLayout {
        let support = Self::support_for(self.shape);
        let c = self.channels();
        let mut off = 0;
        let conv1_taps = off..off + c * support;
        off = conv1_taps.end;
        let conv1_bias = off..off + c;
        off = conv1_bias.end;
        let (conv2_taps, conv2_bias) = if self.conv2.is_some() {
            let t = off..off + support;
            off = t.end;
            let b = off..off + 1;
            off = b.end;
            (t, b)
        } else {
            (off..off, off..off)
        };
        let head_weights = off..off + self.head.weights.len();
        off = head_weights.end;
        let head_bias = off;
        ParamLayout {
            total: off + 1,
            support,
            conv1_taps,
            conv1_bias,
            conv2_taps,
            conv2_bias,
            head_weights,
            head_bias,
        }
    }

    pub fn n_params(&self) -> usize {
        self.layout().total
    }

    pub fn params_flat(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n_params());
        for t in &self.conv1.taps {
            out.extend_from_slice(t);
        }
        out.extend_from_slice(&self.conv1.bias);
        if let Some(c2) = &self.conv2 {
            for t in &c2.taps {
                out.extend_from_slice(t);
            }
            out.extend_from_slice(&c2.bias);
        }
        out.extend_from_slice(&self.head.weights);
        out.push(self.head.bias);
        out
    }

    pub fn set_params_flat(&mut self, flat: &[f64]) {
        assert_eq!(flat.len(), self.n_params());
        let mut off = 0;
        let mut take = |n: usize| {
            let s = &flat[off..off + n];
            off += n;
            s
        };
        for t in &mut self.conv1.taps {
            let n = t.len();
            t.copy_from_slice(take(n));
        }
        let nb = self.conv1.bias.len();
        self.conv1.bias.copy_from_slice(take(nb));
        if let Some(c2) = &mut self.conv2 {
            for t in &mut c2.taps {
                let n = t.len();
                t.copy_from_slice(take(n));
            }
            let nb2 = c2.bias.len();
            c2.bias.copy_from_slice(take(nb2));
        }
        let nh = self.head.weights.len();
        self.head.weights.copy_from_slice(take(nh));
        self.head.bias = take(1)[0];
    }
}

/// Index ranges into the flat parameter vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamLayout {
    pub total: usize,
    pub support: usize,
    pub conv1_taps: Range<usize>,
    pub conv1_bias: Range<usize>,
    pub conv2_taps: Range<usize>,
    pub conv2_bias: Range<usize>,
    pub head_weights: Range<usize>,
    pub head_bias: usize,
}

impl ParamLayout {
    /// True for convolution-tap or head-weight entries; false for biases.
    pub fn is_weight(&self, idx: usize) -> bool {
        self.conv1_taps.contains(&idx)
            || self.conv2_taps.contains(&idx)
            || self.head_weights.contains(&idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_round_trip() {
        let mut net = Network::zeros(Shape::OneD(16), 3, false, Activation::Relu);
        let n = net.n_params();
        let vals: Vec<f64> = (0..n).map(|i| i as f64 * 0.5 - 3.0).collect();
        net.set_params_flat(&vals);
        assert_eq!(net.params_flat(), vals);
        assert_eq!(n, 3 * 5 + 3 + 3 * 16 + 1);
    }

    #[test]
    fn layout_classifies_weights_and_biases() {
        let net = Network::zeros(Shape::OneD(8), 2, false, Activation::Relu);
        let l = net.layout();
        assert!(l.is_weight(l.conv1_taps.start));
        assert!(!l.is_weight(l.conv1_bias.start));
        assert!(l.is_weight(l.head_weights.start));
        assert!(!l.is_weight(l.head_bias));
    }

    #[test]
    fn conv2_constraints() {
        let net = Network::zeros(Shape::TwoD(8), 1, false, Activation::Relu);
        assert!(net.validate().is_ok());
        let mut bad = net.clone();
        bad.conv2 = Some(ConvLayer::zeros(1, SUPPORT_2D));
        assert!(bad.validate().is_err());

        let mut two = Network::zeros(Shape::OneD(8), 1, true, Activation::Relu);
        assert!(two.validate().is_ok());
        two.conv1 = ConvLayer::zeros(2, SUPPORT_1D);
        two.head.weights = vec![0.0; 16];
        assert!(two.validate().is_err());
    }

    #[test]
    fn head_length_must_match() {
        let mut net = Network::zeros(Shape::TwoD(8), 2, false, Activation::Relu);
        assert_eq!(net.head.weights.len(), 128);
        net.head.weights.pop();
        assert!(net.validate().is_err());
    }
}
