use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::UniformAxis;

/// Cell of a polar image, addressed by grid indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pixel {
    pub range: usize,
    pub angle: usize,
}

impl Pixel {
    pub fn new(range: usize, angle: usize) -> Self {
        Self { range, angle }
    }
}

/// Discretized (range, angle) positions. Angles are degrees from the array
/// baseline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarGrid {
    pub range_bins: Vec<f64>,
    pub angle_bins: Vec<f64>,
}

impl PolarGrid {
    pub fn new(range_bins: Vec<f64>, angle_bins: Vec<f64>) -> Result<Self> {
        let grid = Self { range_bins, angle_bins };
        grid.validate()?;
        Ok(grid)
    }

    /// Every bin of `range` and 1° angle steps over [30°, 150°].
    pub fn with_default_angles(range: &UniformAxis) -> Result<Self> {
        Self::new(range.values(), default_angles())
    }

    pub fn validate(&self) -> Result<()> {
        if self.range_bins.is_empty() || self.angle_bins.is_empty() {
            return Err(Error::InvalidParameter("polar grid axes must be non-empty".into()));
        }
        let increasing = |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]);
        if !increasing(&self.range_bins) || !increasing(&self.angle_bins) {
            return Err(Error::InvalidParameter("polar grid axes must be strictly increasing".into()));
        }
        if self.angle_bins.iter().any(|&a| !(a > 0.0 && a < 180.0)) {
            return Err(Error::InvalidParameter("grid angles must lie in (0°, 180°)".into()));
        }
        Ok(())
    }

    pub fn n_range(&self) -> usize {
        self.range_bins.len()
    }

    pub fn n_angle(&self) -> usize {
        self.angle_bins.len()
    }

    pub fn n_cells(&self) -> usize {
        self.n_range() * self.n_angle()
    }

    #[inline]
    pub fn index(&self, p: Pixel) -> usize {
        p.range * self.n_angle() + p.angle
    }

    pub fn pixel(&self, index: usize) -> Pixel {
        Pixel::new(index / self.n_angle(), index % self.n_angle())
    }

    /// (range m, angle °) of a cell.
    pub fn position(&self, p: Pixel) -> (f64, f64) {
        (self.range_bins[p.range], self.angle_bins[p.angle])
    }

    /// Cell nearest to a (range, angle) position.
    pub fn nearest(&self, range: f64, angle: f64) -> Pixel {
        let closest = |v: &[f64], x: f64| {
            (0..v.len()).min_by(|&a, &b| (v[a] - x).abs().total_cmp(&(v[b] - x).abs())).unwrap()
        };
        Pixel::new(closest(&self.range_bins, range), closest(&self.angle_bins, angle))
    }
}

pub fn default_angles() -> Vec<f64> {
    (30..=150).map(f64::from).collect()
}
