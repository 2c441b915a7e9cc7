//! Closed-form weight constructions.
//!
//! Each construction pairs an antisymmetric derivative filter (or one of
//! its higher-order siblings) with an analytically shaped head whose slope
//! and offset are fixed by discrete calibration: the continuum peak factor
//! is replaced by the measured drop mass of the realised grid, so the
//! forward estimate is exact for radii at quantisation-cell midpoints.
//!
//! Constructions are interchangeable strategies behind [`WeightDesign`],
//! registered by name for config/CLI selection.

mod calibrate;
mod constructions;
mod filters;

pub use calibrate::{calibrate_head, cell_midpoint_radius, Calibration, HeadForm, MassSide};
pub use constructions::{
    design_by_name, design_higher_order, design_registry, design_relu_positive, design_sigmoid,
    design_two_layer, DesignConfig, DesignedNetwork, WeightDesign,
};
pub use filters::{derivative_filter, higher_order_filter};
