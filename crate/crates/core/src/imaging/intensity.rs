use super::{ImageSequence, Pixel, PolarGrid};
use crate::error::{Error, Result};

/// Time-averaged image intensity `[range][angle]`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityMap {
    pub values: Vec<f64>,
    pub grid: PolarGrid,
}

impl IntensityMap {
    pub fn new(values: Vec<f64>, grid: PolarGrid) -> Result<Self> {
        if values.len() != grid.n_cells() {
            return Err(Error::DimensionMismatch(format!(
                "{} intensity values for {} cells",
                values.len(),
                grid.n_cells()
            )));
        }
        if values.iter().any(|&v| !(v >= 0.0)) {
            return Err(Error::InvalidParameter("intensity must be non-negative".into()));
        }
        Ok(Self { values, grid })
    }

    #[inline]
    pub fn get(&self, p: Pixel) -> f64 {
        self.values[self.grid.index(p)]
    }
}

/// Per-pixel mean of `|I(t, r)|²` over slow time.
pub fn mean_intensity(img: &ImageSequence) -> Result<IntensityMap> {
    if !img.clutter_removed {
        return Err(Error::ClutterNotRemoved);
    }
    img.validate()?;
    let cells = img.grid.n_cells();
    let mut acc = vec![0.0f64; cells];
    for frame in img.values.chunks_exact(cells) {
        for (a, v) in acc.iter_mut().zip(frame) {
            *a += v.norm_sqr();
        }
    }
    let scale = 1.0 / img.n_slow().max(1) as f64;
    acc.iter_mut().for_each(|a| *a *= scale);
    IntensityMap::new(acc, img.grid.clone())
}

/// Cell of the global maximum. Ties resolve to the smallest range, then the
/// smallest angle.
pub fn locate_target(map: &IntensityMap) -> Result<Pixel> {
    let mut best = 0usize;
    for (i, &v) in map.values.iter().enumerate() {
        if v > map.values[best] {
            best = i;
        }
    }
    if map.values.get(best).is_none_or(|&v| v == 0.0) {
        return Err(Error::AllZeroImage);
    }
    Ok(map.grid.pixel(best))
}
