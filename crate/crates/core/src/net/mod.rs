//! The minimal CNN family: a 5-tap (or 5x5-tap) correlation layer with
//! per-channel bias, an optional second correlation layer (1D, single
//! channel), a pointwise nonlinearity, and a dense head producing the
//! scalar radius estimate.

mod activation;
mod backward;
mod forward;
mod loss;
mod network;
mod snapshot;


pub use activation::Activation;
pub use backward::{
    backward, backward_into, finite_difference, grad_check_max_rel_err, rel_err,
    BackwardScratch, Gradients,
};
pub use forward::{forward, forward_estimate, forward_into, ForwardTrace, LayerTrace};
pub use loss::{batched_loss, batched_loss_with, BatchWorkspace, L2Coeffs};
pub use network::{ConvLayer, DenseHead, Network, ParamLayout, SUPPORT_1D, SUPPORT_2D};
pub use snapshot::{load_snapshot, save_snapshot, snapshot_from_json, snapshot_to_json};
