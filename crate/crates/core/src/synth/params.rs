//! Intrinsic signal parameters and their sampling law.
//!
//! The background intensity is uniform on [0,1]; the foreground is uniform
//! on the unit interval with the contrast ball around the background
//! removed, `[0,1] \ [b-delta, b+delta]`, or on `[b+delta, 1]` when only
//! positive polarity is requested. The radius is uniform on the buffered
//! range `[eps_r/2, (1-eps_r)/2]`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rejection-loop defect guard.
const MAX_REJECTIONS: usize = 1_000_000;

/// Intrinsic parameter triple plus derived polarity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignalParams {
    /// Radius (half-width of the pulse / disk radius) in unit-domain length.
    pub r: f64,
    /// Background intensity.
    pub b: f64,
    /// Foreground intensity.
    pub f: f64,
    /// Sign of `f - b`: +1 bright foreground, -1 dark foreground.
    pub polarity: i8,
}

impl SignalParams {
    pub fn new(r: f64, b: f64, f: f64) -> Self {
        SignalParams {
            r,
            b,
            f,
            polarity: if f >= b { 1 } else { -1 },
        }
    }

    pub fn contrast(&self) -> f64 {
        (self.f - self.b).abs()
    }

    /// Shape-level validity, independent of any particular sampling config.
    pub fn validate_basic(&self) -> Result<()> {
        if !(self.r > 0.0 && self.r < 0.5) {
            return Err(Error::config(format!("r = {} outside (0, 1/2)", self.r)));
        }
        for (name, v) in [("b", self.b), ("f", self.f)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::config(format!("{name} = {v} outside [0, 1]")));
            }
        }
        if self.f == self.b {
            return Err(Error::config("f == b: polarity undefined"));
        }
        if self.polarity != if self.f > self.b { 1 } else { -1 } {
            return Err(Error::config("polarity inconsistent with sign(f - b)"));
        }
        Ok(())
    }

    /// Full validity against a sampling config: contrast margin and radius range.
    pub fn validate_for(&self, cfg: &GenConfig) -> Result<()> {
        self.validate_basic()?;
        if self.contrast() <= cfg.delta {
            return Err(Error::config(format!(
                "|f - b| = {} does not exceed delta = {}",
                self.contrast(),
                cfg.delta
            )));
        }
        let (lo, hi) = cfg.radius_range();
        if self.r < lo || self.r > hi {
            return Err(Error::config(format!(
                "r = {} outside [{lo}, {hi}]",
                self.r
            )));
        }
        if cfg.polarity == PolarityMode::PositiveOnly && self.polarity != 1 {
            return Err(Error::config("negative polarity under positive_only"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarityMode {
    Both,
    PositiveOnly,
}

/// Dataset generation config. All fields are resolved concrete values; the
/// reference constructors encode the defaults used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    /// Spatial dimensionality: 1 (pulse) or 2 (disk).
    pub dims: u8,
    /// Samples per axis.
    pub d: usize,
    /// Minimum contrast |f - b|.
    pub delta: f64,
    /// Radius margin: radii live in [eps_r/2, (1-eps_r)/2].
    pub eps_r: f64,
    /// Blur std in unit-domain length.
    pub sigma_g: f64,
    /// Noise std in intensity units.
    pub sigma_n: f64,
    pub polarity: PolarityMode,
    pub seed: u64,
}

pub const REF_DELTA: f64 = 50.0 / 255.0;
pub const REF_EPS_R: f64 = 0.1;
pub const REF_SIGMA_N: f64 = 10.0 / 255.0;

impl GenConfig {
    /// Reference 1D config: D = 32, delta = 50/255, eps_r = 1/10,
    /// sigma_g = 1/D, sigma_n = 10/255.
    pub fn reference_1d(polarity: PolarityMode, seed: u64) -> Self {
        GenConfig {
            dims: 1,
            d: 32,
            delta: REF_DELTA,
            eps_r: REF_EPS_R,
            sigma_g: 1.0 / 32.0,
            sigma_n: REF_SIGMA_N,
            polarity,
            seed,
        }
    }

    /// Reference 2D config: same hyperparameters on a D x D grid.
    pub fn reference_2d(polarity: PolarityMode, seed: u64) -> Self {
        GenConfig {
            dims: 2,
            ..Self::reference_1d(polarity, seed)
        }
    }

    pub fn radius_range(&self) -> (f64, f64) {
        (self.eps_r / 2.0, (1.0 - self.eps_r) / 2.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims != 1 && self.dims != 2 {
            return Err(Error::config(format!("dims = {} not in {{1, 2}}", self.dims)));
        }
        if self.d < 8 {
            return Err(Error::config(format!("d = {} below minimum 8", self.d)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::config(format!("delta = {} outside (0, 1)", self.delta)));
        }
        if !(self.eps_r > 0.0 && self.eps_r < 1.0) {
            return Err(Error::config(format!("eps_r = {} outside (0, 1)", self.eps_r)));
        }
        if !(self.sigma_g >= 0.0) {
            return Err(Error::config(format!("sigma_g = {} negative", self.sigma_g)));
        }
        if !(self.sigma_n >= 0.0) {
            return Err(Error::config(format!("sigma_n = {} negative", self.sigma_n)));
        }
        Ok(())
    }
}

/// Draw one parameter triple. Draw order is fixed (r, then b, then f) so a
/// given RNG stream always yields the same triple.
pub fn sample_params<R: Rng>(cfg: &GenConfig, rng: &mut R) -> Result<SignalParams> {
    cfg.validate()?;
    let (r_lo, r_hi) = cfg.radius_range();
    let r = r_lo + rng.gen::<f64>() * (r_hi - r_lo);

    let (b, f) = match cfg.polarity {
        PolarityMode::PositiveOnly => sample_positive(cfg.delta, rng)?,
        PolarityMode::Both => sample_both(cfg.delta, rng)?,
    };
    let p = SignalParams::new(r, b, f);
    debug_assert!(p.validate_for(cfg).is_ok());
    Ok(p)
}

/// b ~ U[0,1] rejected until it admits a foreground, then f ~ U[b+delta, 1].
fn sample_positive<R: Rng>(delta: f64, rng: &mut R) -> Result<(f64, f64)> {
    for _ in 0..MAX_REJECTIONS {
        let b: f64 = rng.gen();
        if b + delta > 1.0 {
            continue;
        }
        let f = b + delta + rng.gen::<f64>() * (1.0 - b - delta);
        if f - b > delta {
            return Ok((b, f));
        }
    }
    Err(Error::Sampling(format!(
        "no admissible (b, f) after {MAX_REJECTIONS} draws (delta = {delta})"
    )))
}

/// b ~ U[0,1], then f uniform on [0,1] with the delta ball around b removed,
/// realised by mapping one uniform draw onto the two remaining segments.
fn sample_both<R: Rng>(delta: f64, rng: &mut R) -> Result<(f64, f64)> {
    for _ in 0..MAX_REJECTIONS {
        let b: f64 = rng.gen();
        let left = (b - delta).max(0.0);
        let right = (1.0 - (b + delta)).max(0.0);
        let total = left + right;
        if total <= 0.0 {
            continue;
        }
        let u = rng.gen::<f64>() * total;
        let f = if u < left { u } else { b + delta + (u - left) };
        if (f - b).abs() > delta {
            return Ok((b, f));
        }
    }
    Err(Error::Sampling(format!(
        "no admissible (b, f) after {MAX_REJECTIONS} draws (delta = {delta})"
    )))
}
