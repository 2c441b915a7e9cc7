//! Per-sample estimation reports and the pixel-scaled RMSE.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::net::{forward_into, ForwardTrace, Network};
use crate::synth::Dataset;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EvalPair {
    pub r_true: f64,
    pub r_est: f64,
    pub f: f64,
    pub b: f64,
    pub polarity: i8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalReport {
    pub d: usize,
    pub pairs: Vec<EvalPair>,
    /// RMSE of the radius estimate in pixel units: radius estimates live
    /// in [0, 1/2] and the pixel scale maps that range onto [0, D/2], so
    /// radius errors carry a factor of D. (Equivalently: one grid step of
    /// mask growth changes the reported value by about one pixel.)
    pub rmse_px: f64,
}

/// Pixel scale applied to radius errors: [0, 1/2] -> [0, D/2].
pub fn pixel_scale(d: usize) -> f64 {
    d as f64
}

impl EvalReport {
    pub fn from_pairs(d: usize, pairs: Vec<EvalPair>) -> Self {
        let mse = pairs
            .iter()
            .map(|p| (p.r_est - p.r_true).powi(2))
            .sum::<f64>()
            / pairs.len() as f64;
        EvalReport {
            d,
            pairs,
            rmse_px: pixel_scale(d) * mse.sqrt(),
        }
    }

    /// Unit-domain RMSE (rmse_px without the pixel scale).
    pub fn rmse_unit(&self) -> f64 {
        self.rmse_px / pixel_scale(self.d)
    }
}

/// Evaluate the network over a dataset.
pub fn evaluate(net: &Network, ds: &Dataset) -> Result<EvalReport> {
    const CHUNKS: usize = 8;
    let n = ds.n();
    let per = n.div_ceil(CHUNKS);
    let chunks: Result<Vec<Vec<EvalPair>>> = (0..CHUNKS)
        .into_par_iter()
        .map(|ci| {
            let (lo, hi) = ((ci * per).min(n), ((ci + 1) * per).min(n));
            let mut trace = ForwardTrace::default();
            let mut out = Vec::with_capacity(hi - lo);
            for s in &ds.samples[lo..hi] {
                forward_into(net, s, &mut trace)?;
                out.push(EvalPair {
                    r_true: s.label_r,
                    r_est: trace.estimate,
                    f: s.params.f,
                    b: s.params.b,
                    polarity: s.params.polarity,
                });
            }
            Ok(out)
        })
        .collect();
    let pairs: Vec<EvalPair> = chunks?.into_iter().flatten().collect();
    Ok(EvalReport::from_pairs(ds.cfg.d, pairs))
}

/// Scatter export: `r_true,r_est,f,b,polarity`.
pub fn write_scatter_csv(report: &EvalReport, path: &Path) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "r_true,r_est,f,b,polarity")?;
    for p in &report.pairs {
        writeln!(w, "{},{},{},{},{}", p.r_true, p.r_est, p.f, p.b, p.polarity)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{Activation, Network};
    use crate::rng::stream_rng;
    use crate::synth::{gen_dataset, GenConfig, PolarityMode, Shape};
    use rand::Rng;

    #[test]
    fn echoed_labels_give_zero_rmse() {
        let pairs: Vec<EvalPair> = (0..50)
            .map(|i| {
                let r = 0.05 + 0.008 * i as f64;
                EvalPair {
                    r_true: r,
                    r_est: r,
                    f: 0.8,
                    b: 0.2,
                    polarity: 1,
                }
            })
            .collect();
        assert_eq!(EvalReport::from_pairs(32, pairs).rmse_px, 0.0);
    }

    #[test]
    fn rmse_scaling_identity_holds() {
        let mut rng = stream_rng(3, 0);
        let pairs: Vec<EvalPair> = (0..100)
            .map(|_| EvalPair {
                r_true: rng.gen::<f64>() * 0.4 + 0.05,
                r_est: rng.gen::<f64>() * 0.4 + 0.05,
                f: 0.9,
                b: 0.1,
                polarity: 1,
            })
            .collect();
        let d = 32;
        let report = EvalReport::from_pairs(d, pairs.clone());
        let direct = d as f64
            * (pairs.iter().map(|p| (p.r_est - p.r_true).powi(2)).sum::<f64>() / 100.0).sqrt();
        assert!((report.rmse_px - direct).abs() < 1e-14);
    }

    #[test]
    fn constant_estimator_matches_uniform_radius_std() {
        // A zero network estimating b_a = mean radius scores the standard
        // deviation of the uniform radius law, (1 - 2 eps_r)/2 / sqrt(12),
        // times the pixel scale.
        let cfg = GenConfig::reference_1d(PolarityMode::Both, 77);
        let ds = gen_dataset(&cfg, 10_000).unwrap();
        let mut net = Network::zeros(Shape::OneD(32), 1, false, Activation::Relu);
        net.head.bias = 0.25;
        let report = evaluate(&net, &ds).unwrap();
        let width = (1.0 - 2.0 * cfg.eps_r) / 2.0;
        let expect_px = pixel_scale(32) * width / 12f64.sqrt();
        assert!(
            (report.rmse_px - expect_px).abs() < 0.1,
            "rmse {} vs closed form {expect_px}",
            report.rmse_px
        );
    }
}
