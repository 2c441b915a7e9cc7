//! End-to-end checks of the closed-form constructions: estimation accuracy
//! at quantisation limits, the invariances each design guarantees, and the
//! intensity-dependence failure of the single-layer ReLU design on the
//! polarity it was not built for.

use radlab_core::analyze::least_squares;
use radlab_core::design::{
    design_by_name, design_higher_order, design_relu_positive, design_sigmoid, design_two_layer,
    DesignConfig,
};
use radlab_core::net::{forward, forward_estimate, Activation, Network};
use radlab_core::rng::stream_rng;
use radlab_core::synth::{gen_pulse_clean, Sample, SignalParams};
use rand::Rng;

fn grid_step(d: usize) -> f64 {
    1.0 / (d as f64 - 1.0)
}

fn pulse(r: f64, b: f64, f: f64, d: usize) -> Sample {
    gen_pulse_clean(&SignalParams::new(r, b, f), d)
}

/// Straight-line reimplementation of the estimator: correlation, bias,
/// nonlinearity, weighted sum, all as plain index loops.
fn naive_estimate(net: &Network, x: &[f64]) -> f64 {
    let d = x.len();
    let c = net.conv1.taps.len();
    let act = |z: f64| match net.activation {
        Activation::Relu => z.max(0.0),
        Activation::PiecewiseSigmoid { tau } => {
            if z <= -tau {
                0.0
            } else if z >= tau {
                1.0
            } else {
                z / (2.0 * tau) + 0.5
            }
        }
    };
    let correlate = |taps: &[f64], src: &[f64], bias: f64| -> Vec<f64> {
        (0..d)
            .map(|i| {
                let mut acc = bias;
                for j in 0..5i64 {
                    let s = i as i64 + j - 2;
                    if s >= 0 && (s as usize) < d {
                        acc += taps[j as usize] * src[s as usize];
                    }
                }
                act(acc)
            })
            .collect()
    };
    let mut maps = Vec::new();
    for ch in 0..c {
        let mut m = correlate(&net.conv1.taps[ch], x, net.conv1.bias[ch]);
        if let Some(c2) = &net.conv2 {
            m = correlate(&c2.taps[0], &m, c2.bias[0]);
        }
        maps.push(m);
    }
    let mut est = net.head.bias;
    for (ch, m) in maps.iter().enumerate() {
        for (i, v) in m.iter().enumerate() {
            est += net.head.weights[ch * d + i] * v;
        }
    }
    est
}

#[test]
fn prop1_matches_naive_reimplementation() {
    let designed = design_relu_positive(&DesignConfig::new(256)).unwrap();
    let x = pulse(0.2, 0.3, 0.8, 256);
    let fast = forward_estimate(&designed.net, &x).unwrap();
    let naive = naive_estimate(&designed.net, &x.data);
    assert!((fast - naive).abs() < 1e-12);
    assert!((fast - 0.2).abs() <= 0.5 * grid_step(256));
}

#[test]
fn prop1_estimates_random_positive_pulses_to_half_a_grid_step() {
    let d = 256;
    let designed = design_relu_positive(&DesignConfig::new(d)).unwrap();
    let mut rng = stream_rng(2024, 0);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let r = 0.05 + 0.4 * rng.gen::<f64>();
        let b = rng.gen::<f64>() * (1.0 - 50.0 / 255.0);
        let f = (b + 50.0 / 255.0 + rng.gen::<f64>() * (1.0 - b - 50.0 / 255.0)).min(1.0);
        let est = forward_estimate(&designed.net, &pulse(r, b, f, d)).unwrap();
        worst = worst.max((est - r).abs());
    }
    assert!(
        worst <= 0.5 * grid_step(d) + 1e-12,
        "worst error {worst} vs half grid step {}",
        0.5 * grid_step(d)
    );
}

#[test]
fn prop1_is_exactly_invariant_to_intensity_shifts_and_contrast() {
    let d = 256;
    let designed = design_relu_positive(&DesignConfig::new(d)).unwrap();
    let base = forward_estimate(&designed.net, &pulse(0.2, 0.3, 0.8, d)).unwrap();
    let shifted = forward_estimate(&designed.net, &pulse(0.2, 0.4, 0.9, d)).unwrap();
    assert!((base - shifted).abs() < 1e-9);

    // Any two triples sharing r with contrast >= delta agree.
    let mut rng = stream_rng(7, 1);
    for _ in 0..200 {
        let r = 0.05 + 0.4 * rng.gen::<f64>();
        let tri = |rng: &mut rand_chacha::ChaCha8Rng| {
            let b = rng.gen::<f64>() * (1.0 - 50.0 / 255.0);
            let f = b + 50.0 / 255.0 + rng.gen::<f64>() * (1.0 - b - 50.0 / 255.0);
            (b, f)
        };
        let (b1, f1) = tri(&mut rng);
        let (b2, f2) = tri(&mut rng);
        let e1 = forward_estimate(&designed.net, &pulse(r, b1, f1, d)).unwrap();
        let e2 = forward_estimate(&designed.net, &pulse(r, b2, f2, d)).unwrap();
        assert!(
            (e1 - e2).abs() < 1e-9,
            "r = {r}: ({b1}, {f1}) -> {e1} vs ({b2}, {f2}) -> {e2}"
        );
    }
}

#[test]
fn prop1_design_satisfies_its_structural_invariants() {
    for d in [32, 64, 256] {
        let cfg = DesignConfig::new(d);
        let designed = design_relu_positive(&cfg).unwrap();
        let b_h = designed.net.conv1.bias[0];
        assert!(b_h > 0.0 && b_h < cfg.alpha * cfg.delta / 2.0);
        let h = grid_step(d);
        let w = &designed.net.head.weights;
        let mut right = Vec::new();
        for (i, &v) in w.iter().enumerate() {
            let x = i as f64 * h;
            if x < 0.5 || i == d - 1 {
                assert_eq!(v, 0.0, "head must vanish at x = {x}");
            } else {
                right.push(v);
            }
        }
        for pair in right.windows(2) {
            assert!(pair[1] < pair[0], "right half must be strictly decreasing");
        }
        let sum: f64 = right.iter().sum();
        let mass: f64 = right.iter().map(|v| v.abs()).sum();
        assert!(
            sum.abs() < 0.05 * mass,
            "right-half head sum {sum} should be small against its mass {mass}"
        );
        // Discrete peak mass of the fully cut two-pixel drop, and the
        // slope the continuum formula predicts from it.
        assert!((designed.calibration.drop_mass - 2.0 * b_h).abs() < 1e-12);
        assert!(
            (designed.calibration.slope + 1.0 / designed.calibration.drop_mass).abs() < 1e-9
        );
        assert!(designed.calibration.residual < 1e-6);
    }
}

#[test]
fn prop1_fails_affinely_on_negative_polarity() {
    // Executable content of the impossibility claim: on negative-polarity
    // data the estimate depends affinely on the intensity difference, with
    // a slope many standard errors away from zero.
    let d = 256;
    let designed = design_relu_positive(&DesignConfig::new(d)).unwrap();
    let r = 0.15;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in 0..40 {
        let contrast = 50.0 / 255.0 + k as f64 * 0.015;
        let b = 0.98f64.min(contrast + 0.01);
        let f = b - contrast;
        assert!(f >= 0.0);
        xs.push(contrast);
        ys.push(forward_estimate(&designed.net, &pulse(r, b, f, d)).unwrap());
    }
    let fit = least_squares(&xs, &ys);
    assert!(
        fit.slope.abs() > 10.0 * fit.slope_se.max(1e-300),
        "slope {} vs se {}",
        fit.slope,
        fit.slope_se
    );
    assert!(fit.slope.abs() > 0.05, "dependence should be material");
}

#[test]
fn two_layer_design_estimates_both_polarities() {
    let d = 256;
    let designed = design_two_layer(&DesignConfig::new(d)).unwrap();
    let h = grid_step(d);
    let mut rng = stream_rng(99, 0);
    for _ in 0..300 {
        let r = 0.05 + 0.4 * rng.gen::<f64>();
        let lo = rng.gen::<f64>() * (1.0 - 50.0 / 255.0);
        let hi = lo + 50.0 / 255.0 + rng.gen::<f64>() * (1.0 - lo - 50.0 / 255.0);
        let pos = forward_estimate(&designed.net, &pulse(r, lo, hi, d)).unwrap();
        let neg = forward_estimate(&designed.net, &pulse(r, hi, lo, d)).unwrap();
        assert!((pos - r).abs() <= 0.5 * h + 1e-12, "positive: {pos} vs {r}");
        assert!((neg - r).abs() <= 0.5 * h + 1e-12, "negative: {neg} vs {r}");
        assert!((pos - neg).abs() < 1e-9, "polarity asymmetry {:e}", pos - neg);
    }
    assert!((designed.calibration.drop_mass - 2.0 * designed.net.conv1.bias[0]).abs() < 1e-12);
}

#[test]
fn two_layer_head_is_exactly_symmetric() {
    let designed = design_two_layer(&DesignConfig::new(128)).unwrap();
    let w = &designed.net.head.weights;
    for i in 0..128 {
        assert_eq!(w[i].to_bits(), w[127 - i].to_bits(), "asymmetry at {i}");
    }
    // V opens upward: slope in |x - 1/2| is positive.
    assert!(designed.calibration.slope > 0.0);
}

#[test]
fn sigmoid_design_estimates_both_polarities_at_high_and_low_resolution() {
    for d in [256usize, 32] {
        let designed = design_sigmoid(&DesignConfig::new(d)).unwrap();
        let h = grid_step(d);
        let mut rng = stream_rng(512 + d as u64, 0);
        for _ in 0..200 {
            let r = 0.05 + 0.4 * rng.gen::<f64>();
            let lo = rng.gen::<f64>() * (1.0 - 50.0 / 255.0);
            let hi = lo + 50.0 / 255.0 + rng.gen::<f64>() * (1.0 - lo - 50.0 / 255.0);
            let pos = forward_estimate(&designed.net, &pulse(r, lo, hi, d)).unwrap();
            let neg = forward_estimate(&designed.net, &pulse(r, hi, lo, d)).unwrap();
            assert!((pos - r).abs() <= 0.5 * h + 1e-12, "d={d}: {pos} vs {r}");
            assert!((neg - r).abs() <= 0.5 * h + 1e-12, "d={d}: {neg} vs {r}");
            assert!((pos - neg).abs() <= 0.5 * h, "d={d} polarity gap {:e}", pos - neg);
        }
    }
}

#[test]
fn sigmoid_with_zero_bias_collapses_to_a_constant() {
    // High gain but b_h = 0: representations of opposite polarities are
    // opposite, so the affine head returns the same constant for every
    // input.
    let d = 128;
    let cfg = DesignConfig::new(d);
    let designed = design_sigmoid(&cfg).unwrap();
    let mut net = designed.net.clone();
    net.conv1.bias[0] = 0.0;
    let mut rng = stream_rng(31, 0);
    let mut estimates = Vec::new();
    for _ in 0..100 {
        let r = 0.05 + 0.4 * rng.gen::<f64>();
        let lo = rng.gen::<f64>() * 0.5;
        let hi = lo + 50.0 / 255.0 + rng.gen::<f64>() * (1.0 - lo - 50.0 / 255.0);
        let (b, f) = if rng.gen::<bool>() { (lo, hi) } else { (hi, lo) };
        estimates.push(forward_estimate(&net, &pulse(r, b, f, d)).unwrap());
    }
    let spread = estimates.iter().cloned().fold(f64::MIN, f64::max)
        - estimates.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread < 1e-9, "estimates vary by {spread:e}");
    // The constant is b_a plus half the total head mass (background level
    // 1/2 times the sum of weights); with the near-centred V that sits
    // close to b_a.
    let head_sum: f64 = net.head.weights.iter().sum();
    let predicted = 0.25 + 0.5 * head_sum;
    assert!((estimates[0] - predicted).abs() < 1e-9);
    assert!((estimates[0] - 0.25).abs() < 0.1, "constant {} far from b_a", estimates[0]);
}

#[test]
fn higher_order_design_cannot_be_intensity_invariant() {
    let d = 128;
    let mut cfg = DesignConfig::new(d);
    cfg.k = 2;
    let designed = design_higher_order(&cfg).unwrap();
    // Calibrated at unit contrast the design is accurate there...
    let r = radlab_core::design::cell_midpoint_radius(0.2, d);
    let at_unit = forward_estimate(&designed.net, &pulse(r, 0.0, 1.0, d)).unwrap();
    assert!((at_unit - r).abs() < 1e-9);
    // ...but the estimate moves with contrast at fixed radius.
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in 0..30 {
        let contrast = 0.3 + 0.02 * k as f64;
        xs.push(contrast);
        ys.push(forward_estimate(&designed.net, &pulse(r, 0.0, contrast, d)).unwrap());
    }
    let fit = least_squares(&xs, &ys);
    assert!(fit.slope.abs() > 10.0 * fit.slope_se.max(1e-300));
    assert!(fit.slope.abs() > 0.05);
}

#[test]
fn registry_builds_every_design_by_name() {
    let cfg = DesignConfig::new(64);
    for name in ["prop1", "two_layer", "sigmoid", "higher_order"] {
        let designed = design_by_name(name).unwrap().build(&cfg).unwrap();
        designed.net.validate().unwrap();
        assert!(designed.provenance.starts_with(name));
    }
    assert!(design_by_name("resnet").is_err());
}
