//! Dual-radar agreement, acquisition and ground-truth metrics.

mod compare;
mod metrics;

pub use compare::{
    compare_methods, evaluate_runs, evaluate_series, run_radar, Comparison, MetricsReport, RadarRun,
    TruthSamples,
};
pub use metrics::{
    acquisition_rate, align_series, align_ungated, correlation, rms_error, truth_errors, PairedSamples,
};
