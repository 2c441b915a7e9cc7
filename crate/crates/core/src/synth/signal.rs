//! Clean pulse and disk rasterisation.
//!
//! Grid index i maps to position x_i = i / (D - 1): the first and last
//! pixel centres sit at x = 0 and x = 1. A pixel belongs to the pulse iff
//! |x_i - 1/2| <= r, to the disk iff ||x - (1/2, 1/2)||_2 <= r. The label
//! is the continuous radius; the quantised mask is an emergent property.

use serde::{Deserialize, Serialize};

use super::params::SignalParams;
use crate::error::{Error, Result};

/// Sample geometry: a length-D vector or a D x D grid (row-major).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "dims", content = "d")]
pub enum Shape {
    #[serde(rename = "1")]
    OneD(usize),
    #[serde(rename = "2")]
    TwoD(usize),
}

impl Shape {
    pub fn new(dims: u8, d: usize) -> Result<Self> {
        match dims {
            1 => Ok(Shape::OneD(d)),
            2 => Ok(Shape::TwoD(d)),
            _ => Err(Error::config(format!("dims = {dims} not in {{1, 2}}"))),
        }
    }

    pub fn d(&self) -> usize {
        match *self {
            Shape::OneD(d) | Shape::TwoD(d) => d,
        }
    }

    pub fn dims(&self) -> u8 {
        match self {
            Shape::OneD(_) => 1,
            Shape::TwoD(_) => 2,
        }
    }

    /// Number of scalars in one sample.
    pub fn len(&self) -> usize {
        match *self {
            Shape::OneD(d) => d,
            Shape::TwoD(d) => d * d,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A discretised signal paired with its continuous radius label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub shape: Shape,
    /// Intensities, row-major for 2D. Clean samples take exactly the two
    /// values {b, f}; degraded samples are unbounded (no clipping).
    pub data: Vec<f64>,
    /// Continuous radius, not quantised.
    pub label_r: f64,
    pub params: SignalParams,
}

/// Centre of pixel i on the unit interval.
pub fn pixel_position(i: usize, d: usize) -> f64 {
    i as f64 / (d - 1) as f64
}

pub fn gen_pulse_clean(params: &SignalParams, d: usize) -> Sample {
    debug_assert!(params.r > 0.0 && params.r < 0.5);
    let data = (0..d)
        .map(|i| {
            if (pixel_position(i, d) - 0.5).abs() <= params.r {
                params.f
            } else {
                params.b
            }
        })
        .collect();
    Sample {
        shape: Shape::OneD(d),
        data,
        label_r: params.r,
        params: *params,
    }
}

pub fn gen_disk_clean(params: &SignalParams, d: usize) -> Sample {
    debug_assert!(params.r > 0.0 && params.r < 0.5);
    let mut data = Vec::with_capacity(d * d);
    for i in 0..d {
        let dy = pixel_position(i, d) - 0.5;
        for k in 0..d {
            let dx = pixel_position(k, d) - 0.5;
            let inside = (dy * dy + dx * dx).sqrt() <= params.r;
            data.push(if inside { params.f } else { params.b });
        }
    }
    Sample {
        shape: Shape::TwoD(d),
        data,
        label_r: params.r,
        params: *params,
    }
}
