//! Measurements: pixel-scaled RMSE reports, intermediate-representation
//! dumps, learned-filter classification, 2D head cut profiles, estimation
//! manifolds, and per-channel contributions.

mod cut;
mod filter_class;
mod report;
mod stats;
mod sweep;
mod trace_dump;

pub use cut::{cut_profile, write_profile_csv};
pub use filter_class::{classify_filter, FilterClass, FilterReport};
pub use report::{evaluate, pixel_scale, write_scatter_csv, EvalPair, EvalReport};
pub use stats::{least_squares, spearman_rho, LinearFit};
pub use sweep::{
    per_channel_contribution, sweep_manifold, write_sweep_csv, Region, SweepMode, SweepPoint,
};
pub use trace_dump::dump_trace;
