//! Respiratory-interval estimation from FMCW MIMO radar for restless
//! subjects.
//!
//! The crate simulates beat-signal data cubes, forms polar radar images,
//! extracts per-pixel velocity tracks and estimates the respiratory
//! interval with short-time autocorrelation. Body-motion contamination is
//! suppressed by scoring each pixel's correlation against a best-fit cosine
//! and fusing pixels with inverse-residual weights.

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod eval;
pub mod imaging;
pub mod io;
pub mod respiration;
pub mod sim;

pub use config::RunConfig;
pub use error::{Error, Result};
pub use eval::MetricsReport;
pub use imaging::{Pixel, PolarGrid};
pub use respiration::{IntervalEstimate, IntervalSeries, Method, PipelineConfig};
pub use sim::{ArrayLayout, DataCube, RadarParams, SceneConfig};

/// m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
