//! The four constructions, each behind the [`WeightDesign`] trait.

use serde::{Deserialize, Serialize};

use super::calibrate::{calibrate_head, Calibration, HeadForm, MassSide};
use super::filters::{derivative_filter, higher_order_filter};
use crate::error::{Error, Result};
use crate::net::{Activation, ConvLayer, DenseHead, Network};
use crate::synth::Shape;

/// Parameters shared by the constructions; each design reads the fields it
/// needs.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DesignConfig {
    /// Grid resolution.
    pub d: usize,
    /// Contrast margin the design must tolerate.
    pub delta: f64,
    /// Derivative-filter gain (ReLU designs; any positive value works, the
    /// bias and head scale with it).
    pub alpha: f64,
    /// Sigmoid plateau parameter.
    pub tau: f64,
    /// Filter order for the higher-order design.
    pub k: usize,
}

impl DesignConfig {
    pub fn new(d: usize) -> Self {
        DesignConfig {
            d,
            delta: 50.0 / 255.0,
            alpha: 1.0,
            tau: 2.0,
            k: 2,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.d < 16 {
            return Err(Error::config(format!("d = {} below design minimum 16", self.d)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::config(format!("delta = {} outside (0, 1)", self.delta)));
        }
        if self.alpha <= 0.0 {
            return Err(Error::config("alpha must be positive"));
        }
        if self.tau <= 0.0 {
            return Err(Error::config("tau must be positive"));
        }
        Ok(())
    }
}

/// A designed network plus its calibration record.
#[derive(Debug, Clone)]
pub struct DesignedNetwork {
    pub net: Network,
    pub calibration: Calibration,
    /// Provenance string stored in snapshots, e.g. "prop1".
    pub provenance: String,
}

/// Single-layer ReLU design for positive-polarity pulses: positive
/// unbiased derivative filter, bias b_h = alpha delta / 4 (inside the
/// required open interval (0, alpha delta / 2)), head zero on the left
/// half and affine decreasing on the right, final bias 1/4.
pub fn design_relu_positive(cfg: &DesignConfig) -> Result<DesignedNetwork> {
    cfg.validate()?;
    let b_h = cfg.alpha * cfg.delta / 4.0;
    debug_assert!(b_h > 0.0 && b_h < cfg.alpha * cfg.delta / 2.0);
    let mut net = Network {
        shape: Shape::OneD(cfg.d),
        conv1: ConvLayer {
            taps: vec![derivative_filter(cfg.alpha)],
            bias: vec![b_h],
        },
        conv2: None,
        activation: Activation::Relu,
        head: DenseHead {
            weights: vec![0.0; cfg.d],
            bias: 0.25,
        },
    };
    let calibration = calibrate_head(&net, HeadForm::RightAffine, MassSide::Right)?;
    if calibration.slope >= 0.0 {
        return Err(Error::DesignInfeasible(format!(
            "right-half head slope {} is not decreasing",
            calibration.slope
        )));
    }
    net.head.weights = HeadForm::RightAffine.build(cfg.d, calibration.slope, calibration.offset);
    Ok(DesignedNetwork {
        net,
        calibration,
        provenance: "prop1".into(),
    })
}

/// Two-layer ReLU design handling both polarities: the derivative filter
/// and small positive bias as above, then a negated unit impulse with the
/// same bias (flip and lift), and a symmetric V head.
pub fn design_two_layer(cfg: &DesignConfig) -> Result<DesignedNetwork> {
    cfg.validate()?;
    let b_h1 = cfg.alpha * cfg.delta / 4.0;
    let mut net = Network {
        shape: Shape::OneD(cfg.d),
        conv1: ConvLayer {
            taps: vec![derivative_filter(cfg.alpha)],
            bias: vec![b_h1],
        },
        conv2: Some(ConvLayer {
            taps: vec![vec![0.0, 0.0, -1.0, 0.0, 0.0]],
            bias: vec![b_h1],
        }),
        activation: Activation::Relu,
        head: DenseHead {
            weights: vec![0.0; cfg.d],
            bias: 0.25,
        },
    };
    let calibration = calibrate_head(&net, HeadForm::SymmetricV, MassSide::Right)?;
    net.head.weights = HeadForm::SymmetricV.build(cfg.d, calibration.slope, calibration.offset);
    Ok(DesignedNetwork {
        net,
        calibration,
        provenance: "two_layer".into(),
    })
}

/// Single-layer piecewise-sigmoid design handling both polarities: bias
/// below -tau pushes the background into the lower plateau, a high gain
/// pushes the upward peak into the upper plateau
/// (alpha > 2 (tau - b_h) / delta), and a symmetric V head reads off the
/// surviving constant-height peak.
pub fn design_sigmoid(cfg: &DesignConfig) -> Result<DesignedNetwork> {
    cfg.validate()?;
    let b_h = -2.0 * cfg.tau;
    let alpha = 8.0 * cfg.tau / cfg.delta;
    debug_assert!(alpha > 2.0 * (cfg.tau - b_h) / cfg.delta);
    let mut net = Network {
        shape: Shape::OneD(cfg.d),
        conv1: ConvLayer {
            taps: vec![derivative_filter(alpha)],
            bias: vec![b_h],
        },
        conv2: None,
        activation: Activation::PiecewiseSigmoid { tau: cfg.tau },
        head: DenseHead {
            weights: vec![0.0; cfg.d],
            bias: 0.25,
        },
    };
    // For the positive-polarity calibration pulse the surviving saturated
    // peak sits at the left edge.
    let calibration = calibrate_head(&net, HeadForm::SymmetricV, MassSide::Left)?;
    net.head.weights = HeadForm::SymmetricV.build(cfg.d, calibration.slope, calibration.offset);
    Ok(DesignedNetwork {
        net,
        calibration,
        provenance: "sigmoid".into(),
    })
}

/// Failure-experiment device: the prop1 pipeline with a k-order filter in
/// place of the derivative. Calibration runs at unit contrast and
/// succeeds, but the resulting network cannot be intensity invariant.
pub fn design_higher_order(cfg: &DesignConfig) -> Result<DesignedNetwork> {
    cfg.validate()?;
    let taps = higher_order_filter(cfg.k, cfg.alpha)?;
    let b_h = cfg.alpha * cfg.delta / 4.0;
    let mut net = Network {
        shape: Shape::OneD(cfg.d),
        conv1: ConvLayer {
            taps: vec![taps],
            bias: vec![b_h],
        },
        conv2: None,
        activation: Activation::Relu,
        head: DenseHead {
            weights: vec![0.0; cfg.d],
            bias: 0.25,
        },
    };
    let calibration = calibrate_head(&net, HeadForm::RightAffine, MassSide::Right)?;
    net.head.weights = HeadForm::RightAffine.build(cfg.d, calibration.slope, calibration.offset);
    Ok(DesignedNetwork {
        net,
        calibration,
        provenance: format!("higher_order({})", cfg.k),
    })
}

/// A named, interchangeable construction.
pub trait WeightDesign: Sync {
    fn name(&self) -> &'static str;
    fn build(&self, cfg: &DesignConfig) -> Result<DesignedNetwork>;
}

macro_rules! design_strategy {
    ($ty:ident, $name:literal, $func:path) => {
        pub struct $ty;
        impl WeightDesign for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn build(&self, cfg: &DesignConfig) -> Result<DesignedNetwork> {
                $func(cfg)
            }
        }
    };
}

design_strategy!(Prop1Design, "prop1", design_relu_positive);
design_strategy!(TwoLayerDesign, "two_layer", design_two_layer);
design_strategy!(SigmoidDesign, "sigmoid", design_sigmoid);
design_strategy!(HigherOrderDesign, "higher_order", design_higher_order);

pub fn design_registry() -> &'static [&'static dyn WeightDesign] {
    &[&Prop1Design, &TwoLayerDesign, &SigmoidDesign, &HigherOrderDesign]
}

pub fn design_by_name(name: &str) -> Result<&'static dyn WeightDesign> {
    design_registry()
        .iter()
        .find(|d| d.name() == name)
        .copied()
        .ok_or_else(|| Error::UnknownName {
            kind: "design",
            name: name.to_string(),
            known: design_registry()
                .iter()
                .map(|d| d.name())
                .collect::<Vec<_>>()
                .join(", "),
        })
}
