//! Pointwise nonlinearities. ReLU has one flat region; the piecewise
//! affine sigmoid has two (0 below -tau, 1 above tau, slope 1/(2 tau) in
//! between), which is what lets a single layer threshold both peak signs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Activation {
    Relu,
    PiecewiseSigmoid { tau: f64 },
}

impl Activation {
    pub fn validate(&self) -> Result<()> {
        match self {
            Activation::Relu => Ok(()),
            Activation::PiecewiseSigmoid { tau } if *tau > 0.0 => Ok(()),
            Activation::PiecewiseSigmoid { tau } => {
                Err(Error::config(format!("tau = {tau} must be positive")))
            }
        }
    }

    #[inline]
    pub fn apply(&self, z: f64) -> f64 {
        match *self {
            Activation::Relu => {
                if z > 0.0 {
                    z
                } else {
                    0.0
                }
            }
            Activation::PiecewiseSigmoid { tau } => {
                if z <= -tau {
                    0.0
                } else if z >= tau {
                    1.0
                } else {
                    z / (2.0 * tau) + 0.5
                }
            }
        }
    }

    /// Subgradient convention: ReLU'(0) = 0; the sigmoid's kinks take the
    /// interior slope.
    #[inline]
    pub fn derivative(&self, z: f64) -> f64 {
        match *self {
            Activation::Relu => {
                if z > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::PiecewiseSigmoid { tau } => {
                if (-tau..=tau).contains(&z) {
                    1.0 / (2.0 * tau)
                } else {
                    0.0
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigmoid_regimes() {
        let s = Activation::PiecewiseSigmoid { tau: 2.0 };
        assert_eq!(s.apply(-5.0), 0.0);
        assert_eq!(s.apply(5.0), 1.0);
        assert_eq!(s.apply(0.0), 0.5);
        assert_eq!(s.apply(1.0), 0.75);
        assert_eq!(s.apply(-2.0), 0.0);
        assert_eq!(s.apply(2.0), 1.0);
    }

    #[test]
    fn subgradient_conventions() {
        assert_eq!(Activation::Relu.derivative(0.0), 0.0);
        assert_eq!(Activation::Relu.derivative(1e-300), 1.0);
        let s = Activation::PiecewiseSigmoid { tau: 2.0 };
        assert_eq!(s.derivative(2.0), 0.25);
        assert_eq!(s.derivative(-2.0), 0.25);
        assert_eq!(s.derivative(2.0000001), 0.0);
    }
}
