//! Learned-filter taxonomy: edge (one sign change), positive or negative
//! averaging (none), higher order (two or more), or near zero. 2D filters
//! are reduced to a 1D profile along their dominant orientation, estimated
//! from the structure tensor of the tap map.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum FilterClass {
    /// k = 1. `rising` means the response to an upward step is positive
    /// (negative taps before positive along the scan direction).
    Edge { rising: bool },
    PositiveAvg,
    NegativeAvg,
    HigherOrder { k: usize },
    NearZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterReport {
    pub class: FilterClass,
    /// Best-fit antisymmetry-axis angle (radians, 2D only), i.e. the
    /// direction along which the taps vary most.
    pub orientation: Option<f64>,
}

const NEAR_ZERO: f64 = 1e-8;
/// Taps below this fraction of the peak magnitude do not count toward
/// sign changes.
const SIGNIFICANCE: f64 = 0.05;

pub fn classify_filter(taps: &[f64]) -> FilterReport {
    match taps.len() {
        5 => classify_profile(taps, None),
        25 => classify_2d(taps),
        n => panic!("unsupported tap count {n} (expected 5 or 25)"),
    }
}

fn classify_profile(profile: &[f64], orientation: Option<f64>) -> FilterReport {
    let peak = profile.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak < NEAR_ZERO {
        return FilterReport {
            class: FilterClass::NearZero,
            orientation,
        };
    }
    let thresh = SIGNIFICANCE * peak;
    let signs: Vec<i8> = profile
        .iter()
        .filter(|v| v.abs() > thresh)
        .map(|v| if *v > 0.0 { 1 } else { -1 })
        .collect();
    let k = signs.windows(2).filter(|w| w[0] != w[1]).count();
    let class = match k {
        0 => {
            if signs.first().copied().unwrap_or(1) > 0 {
                FilterClass::PositiveAvg
            } else {
                FilterClass::NegativeAvg
            }
        }
        1 => FilterClass::Edge {
            rising: *signs.last().unwrap() > 0,
        },
        k => FilterClass::HigherOrder { k },
    };
    FilterReport { class, orientation }
}

fn classify_2d(taps: &[f64]) -> FilterReport {
    let peak = taps.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak < NEAR_ZERO {
        return FilterReport {
            class: FilterClass::NearZero,
            orientation: None,
        };
    }
    let angle = structure_tensor_angle(taps);
    // Project the 5x5 map onto the line through its centre along the
    // dominant-variation direction.
    let (dx, dy) = (angle.cos(), angle.sin());
    let profile: Vec<f64> = (0..9)
        .map(|s| {
            let t = -2.0 + 0.5 * s as f64;
            bilinear_5x5(taps, 2.0 + t * dy, 2.0 + t * dx)
        })
        .collect();
    classify_profile(&profile, Some(angle))
}

/// Dominant orientation of tap variation: principal eigenvector of the
/// structure tensor of the 5x5 map.
fn structure_tensor_angle(taps: &[f64]) -> f64 {
    let at = |r: i64, c: i64| taps[(r.clamp(0, 4) * 5 + c.clamp(0, 4)) as usize];
    let (mut jxx, mut jyy, mut jxy) = (0.0, 0.0, 0.0);
    for r in 0..5i64 {
        for c in 0..5i64 {
            let gx = (at(r, c + 1) - at(r, c - 1)) / 2.0;
            let gy = (at(r + 1, c) - at(r - 1, c)) / 2.0;
            jxx += gx * gx;
            jyy += gy * gy;
            jxy += gx * gy;
        }
    }
    0.5 * (2.0 * jxy).atan2(jxx - jyy)
}

fn bilinear_5x5(taps: &[f64], row: f64, col: f64) -> f64 {
    let r = row.clamp(0.0, 4.0);
    let c = col.clamp(0.0, 4.0);
    let (r0, c0) = (r.floor() as usize, c.floor() as usize);
    let (r1, c1) = ((r0 + 1).min(4), (c0 + 1).min(4));
    let (fr, fc) = (r - r0 as f64, c - c0 as f64);
    let v00 = taps[r0 * 5 + c0];
    let v01 = taps[r0 * 5 + c1];
    let v10 = taps[r1 * 5 + c0];
    let v11 = taps[r1 * 5 + c1];
    v00 * (1.0 - fr) * (1.0 - fc) + v01 * (1.0 - fr) * fc + v10 * fr * (1.0 - fc) + v11 * fr * fc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_1d_classes() {
        assert_eq!(
            classify_filter(&[0.0, -1.0, 0.0, 1.0, 0.0]).class,
            FilterClass::Edge { rising: true }
        );
        assert_eq!(
            classify_filter(&[0.2, 0.2, 0.2, 0.2, 0.2]).class,
            FilterClass::PositiveAvg
        );
        assert_eq!(
            classify_filter(&[-0.1, -0.2, -0.1, -0.2, -0.1]).class,
            FilterClass::NegativeAvg
        );
        assert_eq!(
            classify_filter(&[0.0, -0.5, 1.0, -0.5, 0.0]).class,
            FilterClass::HigherOrder { k: 2 }
        );
        assert_eq!(
            classify_filter(&[0.0, 1e-9, -1e-10, 1e-9, 0.0]).class,
            FilterClass::NearZero
        );
    }

    #[test]
    fn classification_is_scale_invariant_and_negation_flips_edges() {
        let taps = [0.0, -0.8, 0.0, 0.7, 0.1];
        let base = classify_filter(&taps);
        let scaled: Vec<f64> = taps.iter().map(|v| v * 37.5).collect();
        assert_eq!(classify_filter(&scaled).class, base.class);
        let negated: Vec<f64> = taps.iter().map(|v| -v).collect();
        match (base.class, classify_filter(&negated).class) {
            (FilterClass::Edge { rising: a }, FilterClass::Edge { rising: b }) => {
                assert_ne!(a, b)
            }
            other => panic!("expected edges, got {other:?}"),
        }
    }

    /// Synthetic oriented edge: tap(r, c) = tanh of the signed distance to
    /// a line through the centre.
    fn oriented_edge(angle: f64) -> Vec<f64> {
        let (dx, dy) = (angle.cos(), angle.sin());
        (0..25)
            .map(|i| {
                let (r, c) = ((i / 5) as f64 - 2.0, (i % 5) as f64 - 2.0);
                let signed = c * dx + r * dy;
                (1.5 * signed).tanh()
            })
            .collect()
    }

    #[test]
    fn oriented_2d_edges_are_recovered() {
        for deg in [0.0f64, 30.0, 60.0, 90.0, 120.0] {
            let angle = deg.to_radians();
            let report = classify_filter(&oriented_edge(angle));
            assert!(
                matches!(report.class, FilterClass::Edge { .. }),
                "{deg} deg: {report:?}"
            );
            let got = report.orientation.unwrap();
            // Orientations are pi-periodic.
            let diff = (got - angle).rem_euclid(std::f64::consts::PI);
            let diff = diff.min(std::f64::consts::PI - diff);
            assert!(diff < 0.12, "{deg} deg: recovered {:.3} rad", got);
        }
    }

    #[test]
    fn two_d_averaging_and_near_zero() {
        let pos = vec![0.3; 25];
        assert_eq!(classify_filter(&pos).class, FilterClass::PositiveAvg);
        let zero = vec![1e-10; 25];
        assert_eq!(classify_filter(&zero).class, FilterClass::NearZero);
    }
}
