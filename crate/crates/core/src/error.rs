use std::io;

use thiserror::Error;

/// Errors produced anywhere in the simulation, imaging, respiration and
/// evaluation stages.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("virtual elements overlap at x = {position:.6e} m (pairs {first:?} and {second:?})")]
    OverlappingVirtualElements { position: f64, first: (usize, usize), second: (usize, usize) },

    #[error("scatterer range {range:.3} m exceeds the unambiguous range {max_range:.3} m")]
    TargetOutOfUnambiguousRange { range: f64, max_range: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("grid does not match the range profiles: {0}")]
    GridMismatch(String),

    #[error("static clutter has already been removed from this image")]
    ClutterAlreadyRemoved,

    #[error("operation requires a clutter-suppressed image")]
    ClutterNotRemoved,

    #[error("intensity map is identically zero")]
    AllZeroImage,

    #[error("analysis window [{start:.3} s, {end:.3} s] is outside the record")]
    WindowOutOfRecord { start: f64, end: f64 },

    #[error("degenerate correlation window (energy {energy:.3e})")]
    DegenerateWindow { energy: f64 },

    #[error("no positive peak of the weighted correlation inside the lag band")]
    NoPeak,

    #[error("analysis region has no usable pixel")]
    EmptyRegion,

    #[error("no overlapping accepted estimates (a: {accepted_a}, b: {accepted_b})")]
    NoOverlap { accepted_a: usize, accepted_b: usize },

    #[error("correlation undefined: one series has zero variance")]
    DegenerateVariance,

    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("corrupt file: {0}")]
    CorruptFile(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
