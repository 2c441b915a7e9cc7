use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::net::{Activation, L2Coeffs, Network};
use crate::synth::Shape;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum OptimizerSpec {
    Adam { lr: f64 },
    Sgd { lr: f64, decay: f64 },
}

impl OptimizerSpec {
    pub fn lr(&self) -> f64 {
        match *self {
            OptimizerSpec::Adam { lr } | OptimizerSpec::Sgd { lr, .. } => lr,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitScheme {
    Zeros,
    FanInUniform,
}

/// Geometry of the network to train.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetSpec {
    pub shape: Shape,
    pub channels: usize,
    /// 1 or 2 convolution layers (2 is 1D, single channel only).
    pub layers: usize,
    pub activation: Activation,
}

impl NetSpec {
    pub fn one_d(d: usize, channels: usize) -> Self {
        NetSpec {
            shape: Shape::OneD(d),
            channels,
            layers: 1,
            activation: Activation::Relu,
        }
    }

    pub fn two_d(d: usize, channels: usize) -> Self {
        NetSpec {
            shape: Shape::TwoD(d),
            channels,
            layers: 1,
            activation: Activation::Relu,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.activation.validate()?;
        if self.channels == 0 {
            return Err(Error::config("channels must be at least 1"));
        }
        match self.layers {
            1 => Ok(()),
            2 if self.shape.dims() == 1 && self.channels == 1 => Ok(()),
            2 => Err(Error::config(
                "two conv layers require dims = 1 and channels = 1",
            )),
            n => Err(Error::config(format!("layers = {n} not in {{1, 2}}"))),
        }
    }

    pub fn zeros_net(&self) -> Network {
        Network::zeros(self.shape, self.channels, self.layers == 2, self.activation)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub optimizer: OptimizerSpec,
    pub batch_size: usize,
    pub epochs: usize,
    pub l2_conv: f64,
    pub l2_head: f64,
    pub init: InitScheme,
    pub init_seed: u64,
    pub shuffle_seed: u64,
}

impl TrainConfig {
    /// 1D reference protocol: Adam lr 0.005, batch 32, 500 epochs,
    /// L2 1e-4 on both weight groups.
    pub fn reference_1d(init_seed: u64, shuffle_seed: u64) -> Self {
        TrainConfig {
            optimizer: OptimizerSpec::Adam { lr: 0.005 },
            batch_size: 32,
            epochs: 500,
            l2_conv: 1e-4,
            l2_head: 1e-4,
            init: InitScheme::FanInUniform,
            init_seed,
            shuffle_seed,
        }
    }

    /// 2D reference protocol: SGD lr 0.001 with 0.999 per-epoch decay,
    /// batch 32, 300 epochs.
    pub fn reference_2d(init_seed: u64, shuffle_seed: u64) -> Self {
        TrainConfig {
            optimizer: OptimizerSpec::Sgd { lr: 0.001, decay: 0.999 },
            batch_size: 32,
            epochs: 300,
            ..Self::reference_1d(init_seed, shuffle_seed)
        }
    }

    pub fn l2(&self) -> L2Coeffs {
        L2Coeffs {
            conv: self.l2_conv,
            head: self.l2_head,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.optimizer.lr() <= 0.0 {
            return Err(Error::config("learning rate must be positive"));
        }
        if self.batch_size == 0 {
            return Err(Error::config("batch_size must be at least 1"));
        }
        if self.l2_conv < 0.0 || self.l2_head < 0.0 {
            return Err(Error::config("l2 coefficients must be non-negative"));
        }
        if let OptimizerSpec::Sgd { decay, .. } = self.optimizer {
            if !(decay > 0.0 && decay <= 1.0) {
                return Err(Error::config(format!("sgd decay = {decay} outside (0, 1]")));
            }
        }
        Ok(())
    }
}
