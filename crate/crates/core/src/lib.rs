//! Numerical laboratory for a minimal radius-estimation problem: centred
//! pulses in 1D signals and centred disks in 2D images, estimated by tiny
//! CNNs with a single (or double) convolution layer and a dense head.
//!
//! The crate is organised around five subsystems:
//!
//! - [`synth`]: seeded generation of clean, blurred, and noisy datasets,
//!   with CSV/binary export.
//! - [`net`]: forward and reverse-mode evaluation of the network family,
//!   with full intermediate-representation capture.
//! - [`train`]: MSE training with selective L2, Adam or SGD behind a
//!   name-registered optimizer trait.
//! - [`design`]: closed-form weight constructions (derivative filter +
//!   affine or V-shaped heads) with discrete calibration, behind a
//!   name-registered design trait.
//! - [`analyze`]: RMSE reports, filter classification, head cut profiles,
//!   estimation-manifold sweeps, and per-channel contributions.
//!
//! All randomness flows through explicit seeds ([`rng`]); results are
//! bit-stable across runs and worker counts.

pub mod analyze;
pub mod design;
pub mod error;
pub mod net;
pub mod protocol;
pub mod report;
pub mod rng;
pub mod synth;
pub mod train;

pub use error::{Error, Result};
