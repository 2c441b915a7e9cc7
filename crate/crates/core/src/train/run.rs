//! The training loop: per-epoch deterministic shuffling, minibatch steps,
//! full-validation scoring every epoch, best-validation selection, and a
//! divergence guard.

use std::time::Instant;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{NetSpec, TrainConfig};
use super::init::init_weights;
use super::optimizer::build_optimizer;
use crate::error::{Error, Result};
use crate::net::{batched_loss_with, forward_into, BatchWorkspace, ForwardTrace, Gradients, Network};
use crate::rng::{stream, stream_rng};
use crate::synth::{gen_train_val_test, Dataset, GenConfig};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainHistory {
    /// Mean squared error over the epoch's training batches.
    pub train_mse: Vec<f64>,
    /// Full-validation MSE at the end of each epoch.
    pub val_mse: Vec<f64>,
    pub best_epoch: usize,
    pub wall_secs: f64,
}

#[derive(Debug, Clone)]
pub struct TrainOutcome {
    /// Weights with the lowest validation MSE.
    pub best: Network,
    /// Weights after the final epoch.
    pub last: Network,
    pub history: TrainHistory,
}

/// Deterministic epoch shuffling: a pure function of (seed, epoch, n).
pub fn epoch_permutation(shuffle_seed: u64, epoch: usize, n: usize) -> Vec<u32> {
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut rng = stream_rng(shuffle_seed, stream::SHUFFLE + epoch as u64);
    order.shuffle(&mut rng);
    order
}

/// MSE of the network estimate against the radius labels, evaluated with a
/// fixed-chunk ordered reduction (bit-stable for any worker count).
pub fn dataset_mse(net: &Network, ds: &Dataset) -> Result<f64> {
    let n = ds.n();
    assert!(n > 0);
    const CHUNKS: usize = 8;
    let per = n.div_ceil(CHUNKS);
    let sums: Result<Vec<f64>> = (0..CHUNKS)
        .into_par_iter()
        .map(|ci| {
            let (lo, hi) = ((ci * per).min(n), ((ci + 1) * per).min(n));
            let mut trace = ForwardTrace::default();
            let mut acc = 0.0;
            for s in &ds.samples[lo..hi] {
                forward_into(net, s, &mut trace)?;
                let e = trace.estimate - s.label_r;
                acc += e * e;
            }
            Ok(acc)
        })
        .collect();
    Ok(sums?.iter().sum::<f64>() / n as f64)
}

/// Train on explicit datasets; returns the best-validation network, the
/// final network, and the per-epoch history.
pub fn train(
    cfg: &TrainConfig,
    spec: &NetSpec,
    train_set: &Dataset,
    val_set: &Dataset,
) -> Result<TrainOutcome> {
    cfg.validate()?;
    spec.validate()?;
    if train_set.samples[0].shape != spec.shape {
        return Err(Error::shape(format!(
            "training data shape {:?} does not match net spec {:?}",
            train_set.samples[0].shape, spec.shape
        )));
    }

    let started = Instant::now();
    let mut net = init_weights(spec, cfg.init, cfg.init_seed)?;
    let mut params = net.params_flat();
    let mut opt = build_optimizer(&cfg.optimizer, params.len());
    let mut ws = BatchWorkspace::new(&net);
    let mut grads = Gradients::zeros_for(&net);
    let l2 = cfg.l2();

    let n = train_set.n();
    let mut history = TrainHistory {
        train_mse: Vec::with_capacity(cfg.epochs),
        val_mse: Vec::with_capacity(cfg.epochs),
        best_epoch: 0,
        wall_secs: 0.0,
    };
    let mut best = net.clone();
    let mut best_val = f64::INFINITY;

    let mut batch_refs: Vec<&crate::synth::Sample> = Vec::with_capacity(cfg.batch_size);
    for epoch in 0..cfg.epochs {
        let order = epoch_permutation(cfg.shuffle_seed, epoch, n);
        let mut sq_sum = 0.0;
        for chunk in order.chunks(cfg.batch_size) {
            batch_refs.clear();
            batch_refs.extend(chunk.iter().map(|&i| &train_set.samples[i as usize]));
            let mse = batched_loss_with(&net, &batch_refs, l2, &mut ws, &mut grads)?;
            if !mse.is_finite() {
                return Err(Error::Diverged { epoch, loss: mse });
            }
            sq_sum += mse * batch_refs.len() as f64;
            opt.step(&mut params, &grads.values);
            net.set_params_flat(&params);
        }
        opt.end_epoch();

        let train_mse = sq_sum / n as f64;
        let val_mse = dataset_mse(&net, val_set)?;
        if !val_mse.is_finite() {
            return Err(Error::Diverged { epoch, loss: val_mse });
        }
        if val_mse < best_val {
            best_val = val_mse;
            best = net.clone();
            history.best_epoch = epoch;
        }
        history.train_mse.push(train_mse);
        history.val_mse.push(val_mse);
    }
    history.wall_secs = started.elapsed().as_secs_f64();

    Ok(TrainOutcome {
        best,
        last: net,
        history,
    })
}

/// Convenience path: generate the train/val/test bundle from a generation
/// config, train, and return the test split alongside the outcome.
pub fn train_from_gen(
    cfg: &TrainConfig,
    spec: &NetSpec,
    gen: &GenConfig,
    n_train: usize,
    n_val: usize,
    n_test: usize,
) -> Result<(TrainOutcome, Dataset)> {
    let (train_set, val_set, test_set) = gen_train_val_test(gen, n_train, n_val, n_test)?;
    let outcome = train(cfg, spec, &train_set, &val_set)?;
    Ok((outcome, test_set))
}
