//! Synthetic FMCW MIMO radar data: array geometry, motion ground truth,
//! beat-signal synthesis and the fast-time range transform.

mod array;
mod motion;
mod params;
mod range;
mod scene;
mod synth;

pub use array::{build_virtual_array, ArrayLayout, OVERLAP_TOLERANCE};
pub use motion::{derive_seed, sample_motion, BurstEvent, MotionTrack};
pub use params::RadarParams;
pub use range::{hann, range_transform, RangeProfiles, RangeWindow};
pub use scene::{ClutterScatterer, MotionKind, MotionModel, SceneConfig};
pub use synth::{synthesize_cube, DataCube, GroundTruth};

/// Evenly spaced sample positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformAxis {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl UniformAxis {
    pub fn new(start: f64, step: f64, len: usize) -> Self {
        Self { start, step, len }
    }

    #[inline]
    pub fn value(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len).map(|i| self.value(i)).collect()
    }

    /// Index of the sample nearest to `x`, clamped to the axis.
    pub fn nearest(&self, x: f64) -> usize {
        let pos = ((x - self.start) / self.step).round();
        if pos <= 0.0 {
            0
        } else {
            (pos as usize).min(self.len.saturating_sub(1))
        }
    }
}
