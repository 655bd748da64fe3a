//! Per-pixel velocity, short-time correlation, interval estimation and
//! residual-weighted fusion.

mod acf;
mod config;
mod fusion;
mod interval;
mod phase;
mod pipeline;
mod residual;
mod series;

pub use acf::{short_time_acf, AcfSlice, LagGeometry, MIN_WINDOW_ENERGY};
pub use config::PipelineConfig;
pub use fusion::{fuse_intervals, IntervalEstimate, PixelContribution, MIN_RESIDUAL};
pub use interval::{estimate_interval, tukey, LagBand};
pub use phase::{
    differentiate, displacement, displacement_from_series, unwrap_phase, velocity, DisplacementTrack,
    VelocityTrack,
};
pub use pipeline::{
    analyze_cube, analyze_region, conventional_estimate, prepare_image, run_proposed, strongest_moving_bin,
    HopAnalyzer, HopFailure, HopOutcome, PixelHop, PixelHops, RegionAnalysis,
};
pub use residual::{periodicity_residual, CosineBank, CosineFit};
pub use series::{IntervalSeries, Method};
