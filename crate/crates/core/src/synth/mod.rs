//! Synthetic data: centred pulses (1D) and disks (2D) with uniform-law
//! intrinsic parameters, Gaussian blur, and additive Gaussian noise.

mod dataset;
mod degrade;
mod export;
mod params;
mod signal;

pub use dataset::{gen_dataset, gen_split, gen_train_val_test, Dataset, SplitSeeds};
pub use degrade::{blur_kernel, degrade, gaussian_blur_1d, gaussian_blur_2d};
pub use export::{load_dataset, write_dataset, DatasetMeta};
pub use params::{sample_params, GenConfig, PolarityMode, SignalParams};
pub use signal::{gen_disk_clean, gen_pulse_clean, pixel_position, Sample, Shape};
