//! TOML config schemas with full validation: unknown keys are rejected,
//! defaults are explicit, and the resolved values are what goes into the
//! run manifest.

use std::path::Path;

use radlab_core::net::Activation;
use radlab_core::synth::{GenConfig, PolarityMode};
use radlab_core::train::{InitScheme, NetSpec, OptimizerSpec, TrainConfig};
use radlab_core::{Error, Result};
use serde::{Deserialize, Serialize};

fn read_toml<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Artifact {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// Dataset generation file.
///
/// ```toml
/// dims = 1
/// d = 32
/// polarity = "positive_only"
/// seed = 11
/// n = 10000
/// # delta, eps_r, sigma_g, sigma_n default to the reference values
/// # (50/255, 1/10, 1/d, 10/255); set sigma_g/sigma_n to 0 for clean data.
/// # [splits] with train/val/test counts replaces n with a bundle.
/// ```
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenFile {
    pub dims: u8,
    pub d: usize,
    pub polarity: PolarityMode,
    pub seed: u64,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub eps_r: Option<f64>,
    #[serde(default)]
    pub sigma_g: Option<f64>,
    #[serde(default)]
    pub sigma_n: Option<f64>,
    #[serde(default)]
    pub splits: Option<Splits>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Splits {
    pub train: usize,
    pub val: usize,
    pub test: usize,
}

impl GenFile {
    pub fn load(path: &Path) -> Result<Self> {
        let file: GenFile = read_toml(path)?;
        if file.n.is_none() && file.splits.is_none() {
            return Err(Error::config("gen config needs either `n` or `[splits]`"));
        }
        Ok(file)
    }

    /// Resolve optional fields against the reference defaults.
    pub fn resolve(&self, seed_override: Option<u64>) -> Result<GenConfig> {
        let cfg = GenConfig {
            dims: self.dims,
            d: self.d,
            delta: self.delta.unwrap_or(50.0 / 255.0),
            eps_r: self.eps_r.unwrap_or(0.1),
            sigma_g: self.sigma_g.unwrap_or(1.0 / self.d as f64),
            sigma_n: self.sigma_n.unwrap_or(10.0 / 255.0),
            polarity: self.polarity,
            seed: seed_override.unwrap_or(self.seed),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Training file.
///
/// ```toml
/// [model]
/// channels = 1
/// layers = 1
/// activation = "relu"            # or "piecewise_sigmoid" with tau
///
/// [train]
/// optimizer = "adam"             # or "sgd"
/// lr = 0.005
/// batch_size = 32
/// epochs = 500
/// l2_conv = 1e-4
/// l2_head = 1e-4
/// init = "fan_in_uniform"
/// init_seed = 12
/// shuffle_seed = 13
/// # sgd_decay = 0.999            # sgd only
/// ```
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainFile {
    pub model: ModelSection,
    pub train: TrainSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub channels: usize,
    #[serde(default = "one")]
    pub layers: usize,
    pub activation: String,
    #[serde(default)]
    pub tau: Option<f64>,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainSection {
    pub optimizer: String,
    pub lr: f64,
    #[serde(default)]
    pub sgd_decay: Option<f64>,
    pub batch_size: usize,
    pub epochs: usize,
    pub l2_conv: f64,
    pub l2_head: f64,
    pub init: InitScheme,
    pub init_seed: u64,
    pub shuffle_seed: u64,
}

impl TrainFile {
    pub fn load(path: &Path) -> Result<Self> {
        read_toml(path)
    }

    pub fn net_spec(&self, gen: &GenConfig) -> Result<NetSpec> {
        let activation = match self.model.activation.as_str() {
            "relu" => Activation::Relu,
            "piecewise_sigmoid" => Activation::PiecewiseSigmoid {
                tau: self.model.tau.unwrap_or(2.0),
            },
            other => {
                return Err(Error::UnknownName {
                    kind: "activation",
                    name: other.to_string(),
                    known: "relu, piecewise_sigmoid".to_string(),
                })
            }
        };
        let spec = NetSpec {
            shape: radlab_core::synth::Shape::new(gen.dims, gen.d)?,
            channels: self.model.channels,
            layers: self.model.layers,
            activation,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn train_config(&self, seed_override: Option<u64>) -> Result<TrainConfig> {
        let optimizer = match self.train.optimizer.as_str() {
            "adam" => OptimizerSpec::Adam { lr: self.train.lr },
            "sgd" => OptimizerSpec::Sgd {
                lr: self.train.lr,
                decay: self.train.sgd_decay.unwrap_or(0.999),
            },
            other => {
                return Err(Error::UnknownName {
                    kind: "optimizer",
                    name: other.to_string(),
                    known: radlab_core::train::optimizer_names().join(", "),
                })
            }
        };
        let cfg = TrainConfig {
            optimizer,
            batch_size: self.train.batch_size,
            epochs: self.train.epochs,
            l2_conv: self.train.l2_conv,
            l2_head: self.train.l2_head,
            init: self.train.init,
            init_seed: seed_override.map(|s| s.wrapping_mul(2).wrapping_add(1)).unwrap_or(self.train.init_seed),
            shuffle_seed: seed_override.map(|s| s.wrapping_mul(2).wrapping_add(2)).unwrap_or(self.train.shuffle_seed),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
