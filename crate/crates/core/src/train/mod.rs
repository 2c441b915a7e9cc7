//! Training: MSE with selective L2, Adam (1D reference) or SGD with mild
//! decay (2D reference), fixed dataset sizes, long-horizon training with
//! best-validation selection.

mod config;
mod init;
mod optimizer;
mod run;

pub use config::{InitScheme, NetSpec, OptimizerSpec, TrainConfig};
pub use init::init_weights;
pub use optimizer::{build_optimizer, build_optimizer_by_name, optimizer_names, Adam, Optimizer, Sgd};
pub use run::{dataset_mse, epoch_permutation, train, train_from_gen, TrainHistory, TrainOutcome};
