use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{ArrayLayout, DataCube, GroundTruth, UniformAxis};
use crate::error::{Error, Result};

/// Fast-time taper applied before the range DFT.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RangeWindow {
    #[default]
    Hann,
    Rectangular,
}

impl RangeWindow {
    pub fn coefficients(self, n: usize) -> Vec<f64> {
        match self {
            RangeWindow::Hann => hann(n),
            RangeWindow::Rectangular => vec![1.0; n],
        }
    }
}

/// Symmetric Hann window.
pub fn hann(n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![1.0];
    }
    (0..n).map(|i| 0.5 * (1.0 - (2.0 * PI * i as f64 / (n - 1) as f64).cos())).collect()
}

/// Range-compressed samples indexed `[slow][range bin][channel]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeProfiles {
    pub values: Vec<Complex64>,
    pub slow_time: UniformAxis,
    /// Range of each bin, m.
    pub range: UniformAxis,
    pub layout: ArrayLayout,
    pub wavelength: f64,
    pub ground_truth: GroundTruth,
}

impl RangeProfiles {
    pub fn n_slow(&self) -> usize {
        self.slow_time.len
    }

    pub fn n_range(&self) -> usize {
        self.range.len
    }

    pub fn n_channels(&self) -> usize {
        self.layout.len()
    }

    /// Channel vector at one (slow, range) cell.
    #[inline]
    pub fn channels(&self, slow: usize, bin: usize) -> &[Complex64] {
        let k = self.n_channels();
        let start = (slow * self.n_range() + bin) * k;
        &self.values[start..start + k]
    }

    /// Keeps only range bins `lo..hi`.
    pub fn gate(&self, lo: usize, hi: usize) -> Result<Self> {
        if lo >= hi || hi > self.n_range() {
            return Err(Error::InvalidParameter(format!(
                "range gate {lo}..{hi} outside 0..{}",
                self.n_range()
            )));
        }
        let k = self.n_channels();
        let width = hi - lo;
        let mut values = Vec::with_capacity(self.n_slow() * width * k);
        for s in 0..self.n_slow() {
            let row = s * self.n_range() * k;
            values.extend_from_slice(&self.values[row + lo * k..row + hi * k]);
        }
        Ok(Self {
            values,
            slow_time: self.slow_time,
            range: UniformAxis::new(self.range.value(lo), self.range.step, width),
            layout: self.layout.clone(),
            wavelength: self.wavelength,
            ground_truth: self.ground_truth.clone(),
        })
    }
}

/// Windowed DFT along fast time for every (slow time, channel).
///
/// The DFT is referenced to the fast-time axis origin, so a reflector
/// centred on a bin appears there with its carrier phase and a gain of
/// `sum(window)`. Bin `k` maps to range `k * c / (2 * bandwidth)`.
pub fn range_transform(cube: DataCube, window: RangeWindow) -> Result<RangeProfiles> {
    cube.validate()?;
    let n_fast = cube.n_fast();
    let k_count = cube.n_channels();
    let taper = window.coefficients(n_fast);

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(n_fast);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];

    // Shift every bin so the transform is referenced to t' = fast_time.start
    // rather than the first sample.
    let offset = cube.fast_time.start / cube.fast_time.step;
    let shift: Vec<Complex64> = (0..n_fast)
        .map(|k| Complex64::from_polar(1.0, -2.0 * PI * k as f64 * offset / n_fast as f64))
        .collect();

    let DataCube { mut samples, slow_time, layout, params, ground_truth, .. } = cube;
    let mut buf = vec![Complex64::new(0.0, 0.0); n_fast];
    for frame in samples.chunks_exact_mut(n_fast * k_count) {
        for k in 0..k_count {
            for (f, b) in buf.iter_mut().enumerate() {
                *b = frame[f * k_count + k] * taper[f];
            }
            fft.process_with_scratch(&mut buf, &mut scratch);
            for (f, b) in buf.iter().enumerate() {
                frame[f * k_count + k] = *b * shift[f];
            }
        }
    }

    Ok(RangeProfiles {
        values: samples,
        slow_time,
        range: UniformAxis::new(0.0, params.range_resolution(), n_fast),
        layout,
        wavelength: params.wavelength(),
        ground_truth,
    })
}
