//! Filter taps for the constructions, in correlation orientation.

use crate::error::{Error, Result};

/// Positive unbiased derivative filter with gain `alpha`: central
/// difference taps [0, -a/2, 0, +a/2, 0]. Taps sum to zero; the response
/// to a unit upward step is a two-pixel peak of height alpha/2, so a pulse
/// of contrast f-b produces peaks of height +-alpha (f-b) / 2.
pub fn derivative_filter(alpha: f64) -> Vec<f64> {
    assert!(alpha > 0.0, "filter gain must be positive");
    vec![0.0, -alpha / 2.0, 0.0, alpha / 2.0, 0.0]
}

/// Unbiased-or-averaging filters classified by k, the number of sign
/// changes: k = 0 is a positive averaging filter, k = 2 the discrete
/// second difference. (k = 1 is [`derivative_filter`]; a 5-tap support
/// admits no clean k >= 3 monomial analogue.)
pub fn higher_order_filter(k: usize, alpha: f64) -> Result<Vec<f64>> {
    assert!(alpha > 0.0, "filter gain must be positive");
    match k {
        0 => Ok(vec![alpha / 5.0; 5]),
        2 => Ok(vec![0.0, -alpha / 2.0, alpha, -alpha / 2.0, 0.0]),
        other => Err(Error::config(format!(
            "unsupported filter order k = {other} (supported: 0, 2)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Naive correlation oracle (zero padding, support 5, centre 2).
    fn correlate_oracle(taps: &[f64], x: &[f64]) -> Vec<f64> {
        let d = x.len() as i64;
        (0..d)
            .map(|i| {
                (0..5i64)
                    .filter_map(|j| {
                        let src = i + j - 2;
                        (src >= 0 && src < d).then(|| taps[j as usize] * x[src as usize])
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn derivative_taps_sum_to_zero_and_kill_constants() {
        let taps = derivative_filter(1.3);
        assert_eq!(taps.iter().sum::<f64>(), 0.0);
        let resp = correlate_oracle(&taps, &vec![0.7; 40]);
        for &v in &resp[1..39] {
            assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn unit_step_yields_two_pixel_peak_of_half_gain() {
        let alpha = 2.0;
        let taps = derivative_filter(alpha);
        let x: Vec<f64> = (0..32).map(|i| if i >= 16 { 1.0 } else { 0.0 }).collect();
        let resp = correlate_oracle(&taps, &x);
        assert_eq!(resp[15], alpha / 2.0);
        assert_eq!(resp[16], alpha / 2.0);
        let max = resp.iter().cloned().fold(f64::MIN, f64::max);
        assert_eq!(max, alpha / 2.0);
        for (i, &v) in resp.iter().enumerate().take(31).skip(1) {
            if i != 15 && i != 16 {
                assert_eq!(v, 0.0, "unexpected response at {i}");
            }
        }
    }

    #[test]
    fn pulse_peaks_scale_with_contrast() {
        let alpha = 1.0;
        let taps = derivative_filter(alpha);
        for s in [0.3, 0.55] {
            let x: Vec<f64> = (0..64)
                .map(|i| if (20..=40).contains(&i) { s } else { 0.0 })
                .collect();
            let resp = correlate_oracle(&taps, &x);
            let up = resp.iter().cloned().fold(f64::MIN, f64::max);
            let down = resp.iter().cloned().fold(f64::MAX, f64::min);
            assert!((up - alpha * s / 2.0).abs() < 1e-15);
            assert!((down + alpha * s / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn second_difference_is_unbiased_with_both_sign_peaks_per_edge() {
        let taps = higher_order_filter(2, 1.0).unwrap();
        assert!(taps.iter().sum::<f64>().abs() < 1e-15);
        let x: Vec<f64> = (0..32).map(|i| if i >= 16 { 1.0 } else { 0.0 }).collect();
        let resp = correlate_oracle(&taps, &x);
        // One downward and one upward peak straddling the step.
        assert!(resp[15] < -0.4 && resp[16] > 0.4);
        for (i, &v) in resp.iter().enumerate().take(31).skip(1) {
            if i != 15 && i != 16 {
                assert_eq!(v, 0.0);
            }
        }
    }

    #[test]
    fn averaging_filter_responds_proportionally_to_constants() {
        let taps = higher_order_filter(0, 1.0).unwrap();
        for c in [0.25, 0.5] {
            let resp = correlate_oracle(&taps, &vec![c; 24]);
            for &v in &resp[2..22] {
                assert!((v - c).abs() < 1e-15);
                assert!(v > 0.0);
            }
        }
    }

    #[test]
    fn unsupported_order_is_rejected() {
        assert!(higher_order_filter(3, 1.0).is_err());
        assert!(higher_order_filter(1, 1.0).is_err());
    }
}
