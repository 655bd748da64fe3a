use num_complex::Complex64;

use super::ImageSequence;
use crate::error::{Error, Result};

/// Subtracts, for every position within a frame of `stride` values, the
/// mean over all frames.
///
/// The mean is accumulated relative to the first frame, so a position that
/// never changes comes out exactly zero.
pub(crate) fn subtract_slow_time_mean(values: &mut [Complex64], stride: usize) {
    if stride == 0 || values.is_empty() {
        return;
    }
    let frames = values.len() / stride;
    let first = values[..stride].to_vec();
    let mut mean = vec![Complex64::new(0.0, 0.0); stride];
    for frame in values.chunks_exact(stride) {
        for ((m, v), f) in mean.iter_mut().zip(frame).zip(&first) {
            *m += v - f;
        }
    }
    let scale = 1.0 / frames as f64;
    mean.iter_mut().zip(&first).for_each(|(m, f)| *m = *m * scale + f);
    for frame in values.chunks_exact_mut(stride) {
        for (v, m) in frame.iter_mut().zip(&mean) {
            *v -= m;
        }
    }
}

/// Removes static clutter by subtracting each pixel's mean over the whole
/// record.
pub fn suppress_clutter(mut img: ImageSequence) -> Result<ImageSequence> {
    if img.clutter_removed {
        return Err(Error::ClutterAlreadyRemoved);
    }
    img.validate()?;
    let cells = img.grid.n_cells();
    subtract_slow_time_mean(&mut img.values, cells);
    img.clutter_removed = true;
    Ok(img)
}
