//! Discrete head calibration.
//!
//! The continuum derivations approximate the peak integral by
//! 2 Delta a(1/2 + r); on the grid the realised peak occupies exactly two
//! pixels, so the factor is replaced by the measured drop mass M and the
//! head's slope and offset are fixed by requiring the forward estimate to
//! equal r exactly at two cell-midpoint radii. A third radius verifies the
//! fit; a residual above tolerance means the requested design cannot be
//! realised on this grid.

use crate::error::{Error, Result};
use crate::net::{forward, Network};
use crate::synth::{gen_pulse_clean, Sample, SignalParams};

/// Head parameterisation being calibrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeadForm {
    /// Zero on [0, 1/2); affine in x on [1/2, 1] with pivot 3/4. The last
    /// pixel is zeroed: its taps overhang the zero padding, so its
    /// response follows the background intensity rather than the drop.
    RightAffine,
    /// Symmetric V: affine in |x - 1/2| with pivot 1/4, first and last
    /// pixels zeroed (same overhang argument, mirrored).
    SymmetricV,
}

impl HeadForm {
    /// Materialise head weights for slope `s` and offset `t`.
    pub fn build(&self, d: usize, s: f64, t: f64) -> Vec<f64> {
        let c = (d as f64 - 1.0) / 2.0;
        let h = 1.0 / (d as f64 - 1.0);
        match self {
            HeadForm::RightAffine => (0..d)
                .map(|i| {
                    let x = i as f64 * h;
                    if x >= 0.5 && i + 1 < d {
                        s * (x - 0.75) + t
                    } else {
                        0.0
                    }
                })
                .collect(),
            HeadForm::SymmetricV => (0..d)
                .map(|i| {
                    if i == 0 || i + 1 == d {
                        0.0
                    } else {
                        let u = (i as f64 - c).abs() * h;
                        s * (u - 0.25) + t
                    }
                })
                .collect(),
        }
    }
}

/// Which half-domain carries the constant-height thresholded peak for the
/// unit-contrast positive calibration pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassSide {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy)]
pub struct Calibration {
    pub slope: f64,
    pub offset: f64,
    /// Discrete peak mass: sum over the thresholded peak of
    /// |f_sigma - reference level| for a unit-contrast clean pulse.
    pub drop_mass: f64,
    /// |estimate - r| at the verification radius.
    pub residual: f64,
    /// Calibration radii actually used (two solve, one verify).
    pub radii: [f64; 3],
}

/// Snap a target radius to the midpoint of its quantisation cell: masks
/// change exactly when r crosses a pixel's distance to the centre, and at
/// cell midpoints the quantised estimate coincides with r.
pub fn cell_midpoint_radius(target: f64, d: usize) -> f64 {
    let c = (d as f64 - 1.0) / 2.0;
    let h = 1.0 / (d as f64 - 1.0);
    let mut dists: Vec<f64> = (0..d).map(|i| (i as f64 - c).abs() * h).collect();
    dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
    dists.dedup();
    let mut best = (f64::INFINITY, 0.0);
    for w in dists.windows(2) {
        // Skip the degenerate single-pixel cell around an on-grid centre.
        if w[0] == 0.0 {
            continue;
        }
        let mid = 0.5 * (w[0] + w[1]);
        let err = (mid - target).abs();
        if err < best.0 {
            best = (err, mid);
        }
    }
    best.1
}

fn calibration_pulse(r: f64, d: usize) -> Sample {
    gen_pulse_clean(&SignalParams::new(r, 0.0, 1.0), d)
}

/// Fix the affine head of `partial` (conv layers, biases, final bias
/// already set; head weights ignored) so the estimate equals r at
/// cell-midpoint radii. Returns slope, offset, the measured peak mass, and
/// the third-radius residual.
pub fn calibrate_head(
    partial: &Network,
    form: HeadForm,
    mass_side: MassSide,
) -> Result<Calibration> {
    let d = partial.shape.d();
    if partial.shape.dims() != 1 {
        return Err(Error::DesignInfeasible(
            "head calibration is defined for 1D networks".into(),
        ));
    }
    if d < 16 {
        return Err(Error::DesignInfeasible(format!(
            "grid d = {d} too coarse for a local 5-tap design (need d >= 16)"
        )));
    }
    let radii = [
        cell_midpoint_radius(0.15, d),
        cell_midpoint_radius(0.30, d),
        cell_midpoint_radius(0.38, d),
    ];

    // The estimate is affine in (slope, offset): probe three bases.
    let est = |s: f64, t: f64, r: f64| -> Result<f64> {
        let mut net = partial.clone();
        net.head.weights = form.build(d, s, t);
        Ok(forward(&net, &calibration_pulse(r, d))?.estimate)
    };
    let mut coef = [[0.0f64; 3]; 2];
    for (row, &r) in radii.iter().take(2).enumerate() {
        let c0 = est(0.0, 0.0, r)?;
        coef[row] = [est(1.0, 0.0, r)? - c0, est(0.0, 1.0, r)? - c0, r - c0];
    }
    let det = coef[0][0] * coef[1][1] - coef[0][1] * coef[1][0];
    let scale = coef.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if det.abs() <= 1e-12 * scale.max(1.0) {
        return Err(Error::DesignInfeasible(format!(
            "calibration system is singular (det = {det:.3e})"
        )));
    }
    let slope = (coef[0][2] * coef[1][1] - coef[0][1] * coef[1][2]) / det;
    let offset = (coef[0][0] * coef[1][2] - coef[0][2] * coef[1][0]) / det;

    let residual = (est(slope, offset, radii[2])? - radii[2]).abs();
    if residual > 1e-6 {
        return Err(Error::DesignInfeasible(format!(
            "verification residual {residual:.3e} at r = {} exceeds 1e-6",
            radii[2]
        )));
    }

    let drop_mass = measure_peak_mass(partial, mass_side, radii[0])?;

    Ok(Calibration {
        slope,
        offset,
        drop_mass,
        residual,
        radii,
    })
}

/// Sum of |f_sigma - reference| over one half-domain for a unit-contrast
/// clean pulse; the reference level is read at the pulse centre, which is
/// flat for every construction at calibration radii.
fn measure_peak_mass(partial: &Network, side: MassSide, r: f64) -> Result<f64> {
    let d = partial.shape.d();
    let mut net = partial.clone();
    net.head.weights = vec![0.0; net.head_len()];
    let trace = forward(&net, &calibration_pulse(r, d))?;
    let sigma = trace.head_input();
    let reference = sigma[d / 2];
    let c = (d as f64 - 1.0) / 2.0;
    let mass: f64 = (1..d - 1)
        .filter(|&i| match side {
            MassSide::Left => (i as f64) < c,
            MassSide::Right => (i as f64) > c,
        })
        .map(|i| (sigma[i] - reference).abs())
        .sum();
    Ok(mass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoints_land_between_consecutive_pixel_distances() {
        for d in [16usize, 17, 32, 33, 256] {
            let h = 1.0 / (d as f64 - 1.0);
            let r = cell_midpoint_radius(0.2, d);
            assert!((r - 0.2).abs() < h, "d = {d}: snapped {r}");
            // Midpoint property: distance to nearest breakpoint is h/2.
            let c = (d as f64 - 1.0) / 2.0;
            let nearest = (0..d)
                .map(|i| ((i as f64 - c).abs() * h - r).abs())
                .fold(f64::INFINITY, f64::min);
            assert!((nearest - h / 2.0).abs() < 1e-12, "d = {d}");
        }
    }

    #[test]
    fn head_forms_respect_their_supports() {
        let d = 32;
        let right = HeadForm::RightAffine.build(d, -2.0, 0.1);
        for (i, &w) in right.iter().enumerate() {
            let x = i as f64 / 31.0;
            if x < 0.5 || i == d - 1 {
                assert_eq!(w, 0.0, "index {i}");
            }
        }
        let v = HeadForm::SymmetricV.build(d, 2.0, 0.1);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[d - 1], 0.0);
        for i in 1..d - 1 {
            assert_eq!(v[i].to_bits(), v[d - 1 - i].to_bits(), "V symmetry at {i}");
        }
    }
}
