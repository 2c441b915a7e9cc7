//! First-order update rules behind a common trait, registered by name and
//! selected at runtime from config.

use super::config::OptimizerSpec;
use crate::error::{Error, Result};

pub trait Optimizer: Send {
    fn name(&self) -> &'static str;
    /// One parameter update from a gradient of the training objective.
    fn step(&mut self, params: &mut [f64], grads: &[f64]);
    /// Called once at the end of each epoch (learning-rate decay lives here).
    fn end_epoch(&mut self) {}
    fn current_lr(&self) -> f64;
}

/// Adam with the standard defaults beta1 = 0.9, beta2 = 0.999, eps = 1e-8.
pub struct Adam {
    lr: f64,
    beta1: f64,
    beta2: f64,
    eps: f64,
    t: u64,
    m: Vec<f64>,
    v: Vec<f64>,
}

impl Adam {
    pub fn new(lr: f64, n_params: usize) -> Self {
        Adam {
            lr,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            t: 0,
            m: vec![0.0; n_params],
            v: vec![0.0; n_params],
        }
    }
}

impl Optimizer for Adam {
    fn name(&self) -> &'static str {
        "adam"
    }

    fn step(&mut self, params: &mut [f64], grads: &[f64]) {
        debug_assert_eq!(params.len(), grads.len());
        self.t += 1;
        let bc1 = 1.0 - self.beta1.powi(self.t as i32);
        let bc2 = 1.0 - self.beta2.powi(self.t as i32);
        for i in 0..params.len() {
            let g = grads[i];
            self.m[i] = self.beta1 * self.m[i] + (1.0 - self.beta1) * g;
            self.v[i] = self.beta2 * self.v[i] + (1.0 - self.beta2) * g * g;
            let m_hat = self.m[i] / bc1;
            let v_hat = self.v[i] / bc2;
            params[i] -= self.lr * m_hat / (v_hat.sqrt() + self.eps);
        }
    }

    fn current_lr(&self) -> f64 {
        self.lr
    }
}

/// Plain SGD with multiplicative per-epoch decay.
pub struct Sgd {
    lr: f64,
    decay: f64,
}

impl Sgd {
    pub fn new(lr: f64, decay: f64) -> Self {
        Sgd { lr, decay }
    }
}

impl Optimizer for Sgd {
    fn name(&self) -> &'static str {
        "sgd"
    }

    fn step(&mut self, params: &mut [f64], grads: &[f64]) {
        debug_assert_eq!(params.len(), grads.len());
        for i in 0..params.len() {
            params[i] -= self.lr * grads[i];
        }
    }

    fn end_epoch(&mut self) {
        self.lr *= self.decay;
    }

    fn current_lr(&self) -> f64 {
        self.lr
    }
}

pub fn optimizer_names() -> &'static [&'static str] {
    &["adam", "sgd"]
}

pub fn build_optimizer(spec: &OptimizerSpec, n_params: usize) -> Box<dyn Optimizer> {
    match *spec {
        OptimizerSpec::Adam { lr } => Box::new(Adam::new(lr, n_params)),
        OptimizerSpec::Sgd { lr, decay } => Box::new(Sgd::new(lr, decay)),
    }
}

/// Name-based construction for config/CLI selection. `decay` is ignored by
/// optimizers that have no decay notion.
pub fn build_optimizer_by_name(
    name: &str,
    lr: f64,
    decay: f64,
    n_params: usize,
) -> Result<Box<dyn Optimizer>> {
    match name {
        "adam" => Ok(Box::new(Adam::new(lr, n_params))),
        "sgd" => Ok(Box::new(Sgd::new(lr, decay))),
        other => Err(Error::UnknownName {
            kind: "optimizer",
            name: other.to_string(),
            known: optimizer_names().join(", "),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_leaves_parameters_unchanged() {
        let mut p = vec![1.5, -2.0];
        let g = vec![0.0, 0.0];
        let mut sgd = Sgd::new(0.1, 0.999);
        sgd.step(&mut p, &g);
        assert_eq!(p, vec![1.5, -2.0]);
        // Adam with zero moments and zero gradient is also a no-op.
        let mut adam = Adam::new(0.1, 2);
        adam.step(&mut p, &g);
        assert_eq!(p, vec![1.5, -2.0]);
    }

    #[test]
    fn adam_step_size_approaches_lr_for_constant_gradient() {
        let mut adam = Adam::new(0.005, 1);
        let mut p = vec![0.0];
        let g = vec![0.37];
        let mut prev = p[0];
        let mut last_step = 0.0;
        for _ in 0..500 {
            adam.step(&mut p, &g);
            last_step = (p[0] - prev).abs();
            prev = p[0];
        }
        assert!(
            (last_step - 0.005).abs() < 0.005 * 0.02,
            "asymptotic step {last_step}"
        );
    }

    /// Independent scalar Adam, written straight from the update equations.
    fn scalar_adam_reference(w0: f64, lr: f64, steps: usize, grad: impl Fn(f64) -> f64) -> f64 {
        let (b1, b2, eps) = (0.9, 0.999, 1e-8);
        let (mut m, mut v, mut w) = (0.0f64, 0.0f64, w0);
        for t in 1..=steps {
            let g = grad(w);
            m = b1 * m + (1.0 - b1) * g;
            v = b2 * v + (1.0 - b2) * g * g;
            let mh = m / (1.0 - b1.powi(t as i32));
            let vh = v / (1.0 - b2.powi(t as i32));
            w -= lr * mh / (vh.sqrt() + eps);
        }
        w
    }

    #[test]
    fn adam_on_quadratic_matches_scalar_reference_and_converges() {
        // Minimise (w - 3)^2 from w0 = 3.25 with lr = 0.005 for 100 steps.
        let grad = |w: f64| 2.0 * (w - 3.0);
        let mut adam = Adam::new(0.005, 1);
        let mut p = vec![3.25];
        for _ in 0..100 {
            let g = vec![grad(p[0])];
            adam.step(&mut p, &g);
        }
        let reference = scalar_adam_reference(3.25, 0.005, 100, grad);
        assert!((p[0] - reference).abs() < 1e-12, "{} vs {reference}", p[0]);
        assert!((p[0] - 3.0).abs() < 1e-2, "w = {}", p[0]);
    }

    #[test]
    fn sgd_decay_is_multiplicative_per_epoch() {
        let mut sgd = Sgd::new(0.001, 0.999);
        for _ in 0..10 {
            sgd.end_epoch();
        }
        assert!((sgd.current_lr() - 0.001 * 0.999f64.powi(10)).abs() < 1e-18);
    }

    #[test]
    fn registry_rejects_unknown_names() {
        assert!(build_optimizer_by_name("adam", 0.005, 1.0, 3).is_ok());
        assert!(build_optimizer_by_name("sgd", 0.001, 0.999, 3).is_ok());
        match build_optimizer_by_name("rmsprop", 0.01, 1.0, 3) {
            Err(e) => assert!(e.to_string().contains("rmsprop")),
            Ok(_) => panic!("expected an unknown-name error"),
        }
    }
}
