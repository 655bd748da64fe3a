//! Polar radar imaging: Taylor-tapered delay-and-sum beamforming, static
//! clutter suppression, target localization and region extraction.

mod beamform;
mod clutter;
mod grid;
mod intensity;
mod region;
mod taylor;

pub use beamform::{form_image, steering_weights, ChannelImage, ImageSequence, PixelImage};
pub use clutter::suppress_clutter;
pub use grid::{default_angles, Pixel, PolarGrid};
pub use intensity::{locate_target, mean_intensity, IntensityMap};
pub use region::{extract_region, RegionMask};
pub use taylor::taylor_weights;

/// Taper settings used when none are given.
pub const DEFAULT_SIDELOBE_DB: f64 = -30.0;
pub const DEFAULT_NBAR: usize = 4;
