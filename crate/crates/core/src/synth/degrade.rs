//! Degradation: Gaussian blur followed by additive i.i.d. Gaussian noise.
//!
//! The blur is a discrete correlation with a truncated Gaussian kernel:
//! taps at integer grid offsets j in [-T, T] with T = ceil(3 sigma_g (D-1)),
//! evaluated at pixel centres and renormalised to sum 1. At the domain
//! boundary the kernel is renormalised over the in-domain taps, which
//! preserves constants everywhere. 2D blur is the separable product of the
//! 1D kernel. Noise is added without clipping; the label is untouched.

use rand::Rng;
use rand_distr::StandardNormal;

use super::signal::{Sample, Shape};

/// Truncated, renormalised Gaussian kernel for a blur std given in
/// unit-domain length on a D-pixel grid. `sigma_g = 0` yields the identity.
pub fn blur_kernel(sigma_g: f64, d: usize) -> Vec<f64> {
    assert!(sigma_g >= 0.0, "sigma_g must be non-negative");
    let s_px = sigma_g * (d as f64 - 1.0);
    if s_px == 0.0 {
        return vec![1.0];
    }
    let t = (3.0 * s_px).ceil() as i64;
    let mut taps: Vec<f64> = (-t..=t)
        .map(|j| (-0.5 * (j as f64 / s_px).powi(2)).exp())
        .collect();
    let sum: f64 = taps.iter().sum();
    for w in &mut taps {
        *w /= sum;
    }
    taps
}

/// 1D correlation with boundary renormalisation over in-domain taps.
pub fn gaussian_blur_1d(x: &[f64], kernel: &[f64]) -> Vec<f64> {
    let d = x.len() as i64;
    let t = (kernel.len() as i64 - 1) / 2;
    (0..d)
        .map(|i| {
            let mut acc = 0.0;
            let mut wsum = 0.0;
            for (idx, &w) in kernel.iter().enumerate() {
                let src = i + idx as i64 - t;
                if (0..d).contains(&src) {
                    acc += w * x[src as usize];
                    wsum += w;
                }
            }
            acc / wsum
        })
        .collect()
}

/// Separable 2D blur on a row-major D x D grid.
pub fn gaussian_blur_2d(x: &[f64], d: usize, kernel: &[f64]) -> Vec<f64> {
    // Rows, then columns.
    let mut rows = Vec::with_capacity(d * d);
    for i in 0..d {
        rows.extend(gaussian_blur_1d(&x[i * d..(i + 1) * d], kernel));
    }
    let mut out = vec![0.0; d * d];
    let mut col = vec![0.0; d];
    for k in 0..d {
        for i in 0..d {
            col[i] = rows[i * d + k];
        }
        let blurred = gaussian_blur_1d(&col, kernel);
        for i in 0..d {
            out[i * d + k] = blurred[i];
        }
    }
    out
}

/// Apply Eq.-style degradation to a sample. With both stds at zero the
/// output is bit-identical to the input.
pub fn degrade<R: Rng>(s: &Sample, sigma_g: f64, sigma_n: f64, rng: &mut R) -> Sample {
    assert!(sigma_g >= 0.0 && sigma_n >= 0.0);
    let mut data = if sigma_g > 0.0 {
        let kernel = blur_kernel(sigma_g, s.shape.d());
        match s.shape {
            Shape::OneD(_) => gaussian_blur_1d(&s.data, &kernel),
            Shape::TwoD(d) => gaussian_blur_2d(&s.data, d, &kernel),
        }
    } else {
        s.data.clone()
    };
    if sigma_n > 0.0 {
        for v in &mut data {
            let n: f64 = rng.sample(StandardNormal);
            *v += sigma_n * n;
        }
    }
    Sample {
        shape: s.shape,
        data,
        label_r: s.label_r,
        params: s.params,
    }
}
