//! Estimation manifolds: sweep the radius at fixed intensities, or the
//! intensity pair at fixed radius, on clean inputs, flagging each grid
//! point by its relation to the training distribution. Per-channel
//! contributions decompose the unbiased estimate.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::net::{forward, Network};
use crate::synth::{gen_disk_clean, gen_pulse_clean, PolarityMode, Sample, Shape, SignalParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// |f - b| >= delta and the polarity is covered by training.
    Valid,
    /// |f - b| < delta.
    LowContrast,
    /// Polarity absent from the training distribution.
    WrongPolarity,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepPoint {
    pub r: f64,
    pub f: f64,
    pub b: f64,
    pub estimate: f64,
    /// estimate - b_a, the "unbiased" estimate the manifold figures plot.
    pub unbiased: f64,
    pub region: Region,
    /// Per-channel contributions summing to `unbiased`.
    pub channel_contributions: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SweepMode {
    /// Fix (f, b), vary r over `steps` equispaced values in its valid range.
    FixedIntensity { f: f64, b: f64 },
    /// Fix r, vary (f, b) over a `steps` x `steps` unit-square grid.
    FixedRadius { r: f64 },
}

/// Grid resolution matching the reference figures.
pub const SWEEP_STEPS: usize = 64;

fn region_of(f: f64, b: f64, delta: f64, trained_polarity: PolarityMode) -> Region {
    if (f - b).abs() < delta {
        Region::LowContrast
    } else if trained_polarity == PolarityMode::PositiveOnly && f < b {
        Region::WrongPolarity
    } else {
        Region::Valid
    }
}

fn clean_sample(shape: Shape, r: f64, b: f64, f: f64) -> Sample {
    let params = SignalParams::new(r, b, f);
    match shape {
        Shape::OneD(d) => gen_pulse_clean(&params, d),
        Shape::TwoD(d) => gen_disk_clean(&params, d),
    }
}

/// Evaluate the estimation manifold on clean inputs.
pub fn sweep_manifold(
    net: &Network,
    mode: SweepMode,
    delta: f64,
    eps_r: f64,
    trained_polarity: PolarityMode,
) -> Result<Vec<SweepPoint>> {
    let mut points = Vec::new();
    let mut push = |r: f64, b: f64, f: f64| -> Result<()> {
        let sample = clean_sample(net.shape, r, b, f);
        let contributions = per_channel_contribution(net, &sample)?;
        let estimate = contributions.iter().sum::<f64>() + net.head.bias;
        points.push(SweepPoint {
            r,
            f,
            b,
            estimate,
            unbiased: estimate - net.head.bias,
            region: region_of(f, b, delta, trained_polarity),
            channel_contributions: contributions,
        });
        Ok(())
    };
    match mode {
        SweepMode::FixedIntensity { f, b } => {
            let (lo, hi) = (eps_r / 2.0, (1.0 - eps_r) / 2.0);
            for k in 0..SWEEP_STEPS {
                let r = lo + (hi - lo) * k as f64 / (SWEEP_STEPS - 1) as f64;
                push(r, b, f)?;
            }
        }
        SweepMode::FixedRadius { r } => {
            for bi in 0..SWEEP_STEPS {
                let b = bi as f64 / (SWEEP_STEPS - 1) as f64;
                for fi in 0..SWEEP_STEPS {
                    let f = fi as f64 / (SWEEP_STEPS - 1) as f64;
                    push(r, b, f)?;
                }
            }
        }
    }
    Ok(points)
}

/// Channel c's share of the unbiased estimate: the head dot product
/// restricted to channel c's block. The shares sum to estimate - b_a.
pub fn per_channel_contribution(net: &Network, x: &Sample) -> Result<Vec<f64>> {
    let trace = forward(net, x)?;
    let l = net.shape.len();
    let c = net.channels();
    Ok((0..c)
        .map(|ch| trace.f_a_mul[ch * l..(ch + 1) * l].iter().sum())
        .collect())
}

/// Export columns: `r,f,b,estimate,unbiased,region[,channel_0..]`.
pub fn write_sweep_csv(points: &[SweepPoint], path: &Path) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    let channels = points.first().map_or(0, |p| p.channel_contributions.len());
    let chan_cols: Vec<String> = (0..channels).map(|c| format!(",channel_{c}")).collect();
    writeln!(w, "r,f,b,estimate,unbiased,region{}", chan_cols.join(""))?;
    for p in points {
        let region = match p.region {
            Region::Valid => "valid",
            Region::LowContrast => "low_contrast",
            Region::WrongPolarity => "wrong_polarity",
        };
        write!(w, "{},{},{},{},{},{region}", p.r, p.f, p.b, p.estimate, p.unbiased)?;
        for v in &p.channel_contributions {
            write!(w, ",{v}")?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyze::stats::least_squares;
    use crate::design::{design_relu_positive, design_sigmoid, DesignConfig};
    use crate::net::Activation;
    use crate::rng::stream_rng;
    use rand::Rng;

    #[test]
    fn channel_contributions_sum_to_unbiased_estimate() {
        let shape = Shape::TwoD(9);
        let mut net = Network::zeros(shape, 3, false, Activation::Relu);
        let mut rng = stream_rng(5, 1);
        let n = net.n_params();
        let flat: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
        net.set_params_flat(&flat);
        let x = clean_sample(shape, 0.2, 0.1, 0.8);
        let contribs = per_channel_contribution(&net, &x).unwrap();
        let est = forward(&net, &x).unwrap().estimate;
        let sum: f64 = contribs.iter().sum();
        assert!((sum - (est - net.head.bias)).abs() < 1e-12);
    }

    #[test]
    fn single_channel_contribution_is_the_whole_unbiased_estimate() {
        let cfg = DesignConfig::new(64);
        let designed = design_relu_positive(&cfg).unwrap();
        let x = clean_sample(Shape::OneD(64), 0.2, 0.2, 0.7);
        let contribs = per_channel_contribution(&designed.net, &x).unwrap();
        assert_eq!(contribs.len(), 1);
        let est = forward(&designed.net, &x).unwrap().estimate;
        assert!((contribs[0] - (est - 0.25)).abs() < 1e-12);
    }

    #[test]
    fn near_zero_channel_contributes_nothing() {
        // A channel with near-zero taps, negative bias, and a tiny head
        // block: its ReLU output is nil and its contribution below 1e-6.
        let shape = Shape::OneD(16);
        let mut net = Network::zeros(shape, 2, false, Activation::Relu);
        net.conv1.taps[0] = vec![0.0, -0.5, 0.0, 0.5, 0.0];
        net.conv1.bias[0] = 0.05;
        net.conv1.taps[1] = vec![1e-9, -1e-9, 1e-10, 1e-9, 0.0];
        net.conv1.bias[1] = -0.01;
        for i in 0..16 {
            net.head.weights[i] = 0.1;
            net.head.weights[16 + i] = 1e-9;
        }
        let x = clean_sample(shape, 0.2, 0.1, 0.9);
        let contribs = per_channel_contribution(&net, &x).unwrap();
        assert!(contribs[1].abs() < 1e-6);
    }

    #[test]
    fn sigmoid_design_is_flat_over_the_valid_region() {
        let cfg = DesignConfig::new(64);
        let designed = design_sigmoid(&cfg).unwrap();
        let h = 1.0 / 63.0;
        let r = crate::design::cell_midpoint_radius(0.2, 64);
        let points = sweep_manifold(
            &designed.net,
            SweepMode::FixedRadius { r },
            cfg.delta,
            0.1,
            PolarityMode::Both,
        )
        .unwrap();
        for p in points.iter().filter(|p| p.region == Region::Valid) {
            assert!(
                (p.estimate - r).abs() <= 0.5 * h + 1e-12,
                "estimate {} at (f={}, b={})",
                p.estimate,
                p.f,
                p.b
            );
        }
    }

    #[test]
    fn prop1_design_tracks_radius_with_unit_slope() {
        let cfg = DesignConfig::new(128);
        let designed = design_relu_positive(&cfg).unwrap();
        let points = sweep_manifold(
            &designed.net,
            SweepMode::FixedIntensity { f: 0.6, b: 0.2 },
            cfg.delta,
            0.1,
            PolarityMode::PositiveOnly,
        )
        .unwrap();
        let rs: Vec<f64> = points.iter().map(|p| p.r).collect();
        let es: Vec<f64> = points.iter().map(|p| p.estimate).collect();
        let fit = least_squares(&rs, &es);
        assert!(
            (fit.slope - 1.0).abs() <= 0.05,
            "slope {} should be 1 within 0.05",
            fit.slope
        );
    }
}
