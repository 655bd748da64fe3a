use num_complex::Complex64;
use rayon::prelude::*;

use super::clutter::subtract_slow_time_mean;
use super::{IntensityMap, Pixel, PolarGrid};
use crate::error::{Error, Result};
use crate::sim::{ArrayLayout, RangeProfiles, UniformAxis};

/// Beamformer weights `w_k(θ) = α_k exp(j 2π x_k cos θ / λ)` for one angle.
pub fn steering_weights(layout: &ArrayLayout, taper: &[f64], angle_deg: f64) -> Vec<Complex64> {
    let u = angle_deg.to_radians().cos();
    layout
        .virtual_positions
        .iter()
        .zip(taper)
        .map(|(&x, &a)| Complex64::from_polar(a, 2.0 * std::f64::consts::PI * x * u / layout.wavelength))
        .collect()
}

/// Conjugated weights, `[angle][channel]`.
fn conjugate_weight_table(layout: &ArrayLayout, taper: &[f64], grid: &PolarGrid) -> Vec<Complex64> {
    grid.angle_bins
        .iter()
        .flat_map(|&a| steering_weights(layout, taper, a).into_iter().map(|w| w.conj()))
        .collect()
}

#[inline]
fn weighted_sum(conj_weights: &[Complex64], channels: &[Complex64]) -> Complex64 {
    conj_weights.iter().zip(channels).fold(Complex64::new(0.0, 0.0), |acc, (w, s)| acc + w * s)
}

/// Read access to a complex polar image sequence, materialized or formed on
/// demand.
pub trait PixelImage: Sync {
    fn grid(&self) -> &PolarGrid;
    fn slow_time(&self) -> UniformAxis;
    fn wavelength(&self) -> f64;
    fn clutter_removed(&self) -> bool;
    /// Complex value of one pixel over slow time.
    fn pixel_series(&self, pixel: Pixel) -> Vec<Complex64>;
    /// Time-averaged intensity; requires a clutter-suppressed image.
    fn mean_intensity(&self) -> Result<IntensityMap>;
}

/// Complex polar images `[slow][range][angle]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageSequence {
    pub values: Vec<Complex64>,
    pub grid: PolarGrid,
    pub slow_time: UniformAxis,
    pub wavelength: f64,
    pub clutter_removed: bool,
}

impl ImageSequence {
    pub fn n_slow(&self) -> usize {
        self.slow_time.len
    }

    #[inline]
    pub fn frame(&self, slow: usize) -> &[Complex64] {
        let n = self.grid.n_cells();
        &self.values[slow * n..(slow + 1) * n]
    }

    #[inline]
    pub fn get(&self, slow: usize, pixel: Pixel) -> Complex64 {
        self.frame(slow)[self.grid.index(pixel)]
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.len() != self.n_slow() * self.grid.n_cells() {
            return Err(Error::DimensionMismatch(format!(
                "{} image values for {} frames of {} cells",
                self.values.len(),
                self.n_slow(),
                self.grid.n_cells()
            )));
        }
        Ok(())
    }
}

impl PixelImage for ImageSequence {
    fn grid(&self) -> &PolarGrid {
        &self.grid
    }

    fn slow_time(&self) -> UniformAxis {
        self.slow_time
    }

    fn wavelength(&self) -> f64 {
        self.wavelength
    }

    fn clutter_removed(&self) -> bool {
        self.clutter_removed
    }

    fn pixel_series(&self, pixel: Pixel) -> Vec<Complex64> {
        let idx = self.grid.index(pixel);
        let n = self.grid.n_cells();
        self.values.iter().skip(idx).step_by(n).copied().collect()
    }

    fn mean_intensity(&self) -> Result<IntensityMap> {
        super::mean_intensity(self)
    }
}

/// Maps each grid range onto a profile bin.
fn match_range_bins(profiles: &RangeProfiles, grid: &PolarGrid) -> Result<Vec<usize>> {
    grid.range_bins
        .iter()
        .map(|&r| {
            let pos = (r - profiles.range.start) / profiles.range.step;
            let bin = pos.round();
            if (pos - bin).abs() > 1e-6 || bin < 0.0 || bin as usize >= profiles.n_range() {
                Err(Error::GridMismatch(format!("range {r} m is not a profile bin")))
            } else {
                Ok(bin as usize)
            }
        })
        .collect()
}

fn check_inputs(profiles: &RangeProfiles, layout: &ArrayLayout, taper: &[f64]) -> Result<()> {
    if layout.len() != profiles.n_channels() {
        return Err(Error::GridMismatch(format!(
            "layout has {} elements, profiles have {} channels",
            layout.len(),
            profiles.n_channels()
        )));
    }
    if taper.len() != layout.len() {
        return Err(Error::GridMismatch(format!(
            "taper has {} coefficients for {} elements",
            taper.len(),
            layout.len()
        )));
    }
    Ok(())
}

/// Delay-and-sum image `I'(t, r, θ) = w(θ)ᴴ s(t, r)` on every grid cell.
pub fn form_image(
    profiles: &RangeProfiles,
    layout: &ArrayLayout,
    grid: &PolarGrid,
    taper: &[f64],
) -> Result<ImageSequence> {
    grid.validate()?;
    check_inputs(profiles, layout, taper)?;
    let bins = match_range_bins(profiles, grid)?;
    let weights = conjugate_weight_table(layout, taper, grid);
    let k = layout.len();
    let cells = grid.n_cells();

    let mut values = vec![Complex64::new(0.0, 0.0); profiles.n_slow() * cells];
    values.par_chunks_mut(cells).enumerate().for_each(|(slow, frame)| {
        for (ri, &bin) in bins.iter().enumerate() {
            let s = profiles.channels(slow, bin);
            let row = &mut frame[ri * grid.n_angle()..(ri + 1) * grid.n_angle()];
            for (out, w) in row.iter_mut().zip(weights.chunks_exact(k)) {
                *out = weighted_sum(w, s);
            }
        }
    });

    Ok(ImageSequence {
        values,
        grid: grid.clone(),
        slow_time: profiles.slow_time,
        wavelength: profiles.wavelength,
        clutter_removed: false,
    })
}

/// Image formed lazily from range profiles. Clutter suppression is applied
/// in the channel domain, which is equivalent because beamforming is linear;
/// the intensity map comes from per-bin spatial covariances.
#[derive(Debug, Clone)]
pub struct ChannelImage {
    profiles: RangeProfiles,
    grid: PolarGrid,
    bins: Vec<usize>,
    weights: Vec<Complex64>,
    clutter_removed: bool,
}

impl ChannelImage {
    pub fn new(
        profiles: RangeProfiles,
        layout: &ArrayLayout,
        grid: &PolarGrid,
        taper: &[f64],
    ) -> Result<Self> {
        grid.validate()?;
        check_inputs(&profiles, layout, taper)?;
        let bins = match_range_bins(&profiles, grid)?;
        Ok(Self {
            weights: conjugate_weight_table(layout, taper, grid),
            profiles,
            grid: grid.clone(),
            bins,
            clutter_removed: false,
        })
    }

    pub fn suppress_clutter(mut self) -> Result<Self> {
        if self.clutter_removed {
            return Err(Error::ClutterAlreadyRemoved);
        }
        let stride = self.profiles.n_range() * self.profiles.n_channels();
        subtract_slow_time_mean(&mut self.profiles.values, stride);
        self.clutter_removed = true;
        Ok(self)
    }

    pub fn profiles(&self) -> &RangeProfiles {
        &self.profiles
    }

    /// Materializes the full image sequence.
    pub fn to_image_sequence(&self) -> ImageSequence {
        let cells = self.grid.n_cells();
        let k = self.profiles.n_channels();
        let mut values = vec![Complex64::new(0.0, 0.0); self.profiles.n_slow() * cells];
        values.par_chunks_mut(cells).enumerate().for_each(|(slow, frame)| {
            for (ri, &bin) in self.bins.iter().enumerate() {
                let s = self.profiles.channels(slow, bin);
                let row = &mut frame[ri * self.grid.n_angle()..(ri + 1) * self.grid.n_angle()];
                for (out, w) in row.iter_mut().zip(self.weights.chunks_exact(k)) {
                    *out = weighted_sum(w, s);
                }
            }
        });
        ImageSequence {
            values,
            grid: self.grid.clone(),
            slow_time: self.profiles.slow_time,
            wavelength: self.profiles.wavelength,
            clutter_removed: self.clutter_removed,
        }
    }
}

impl PixelImage for ChannelImage {
    fn grid(&self) -> &PolarGrid {
        &self.grid
    }

    fn slow_time(&self) -> UniformAxis {
        self.profiles.slow_time
    }

    fn wavelength(&self) -> f64 {
        self.profiles.wavelength
    }

    fn clutter_removed(&self) -> bool {
        self.clutter_removed
    }

    fn pixel_series(&self, pixel: Pixel) -> Vec<Complex64> {
        let k = self.profiles.n_channels();
        let w = &self.weights[pixel.angle * k..(pixel.angle + 1) * k];
        let bin = self.bins[pixel.range];
        (0..self.profiles.n_slow()).map(|slow| weighted_sum(w, self.profiles.channels(slow, bin))).collect()
    }

    /// `Ī(r, θ) = w(θ)ᴴ R(r) w(θ)` with `R(r)` the time-averaged channel
    /// covariance of range bin `r`.
    fn mean_intensity(&self) -> Result<IntensityMap> {
        if !self.clutter_removed {
            return Err(Error::ClutterNotRemoved);
        }
        let k = self.profiles.n_channels();
        let n_slow = self.profiles.n_slow();
        let values: Vec<f64> = self
            .bins
            .par_iter()
            .flat_map_iter(|&bin| {
                let mut cov = vec![Complex64::new(0.0, 0.0); k * k];
                for slow in 0..n_slow {
                    let s = self.profiles.channels(slow, bin);
                    for (a, sa) in s.iter().enumerate() {
                        let row = &mut cov[a * k..(a + 1) * k];
                        for (c, sb) in row.iter_mut().zip(s) {
                            *c += sa * sb.conj();
                        }
                    }
                }
                let scale = 1.0 / n_slow as f64;
                self.weights.chunks_exact(k).map(move |cw| {
                    // cw = conj(w); Ī = Σ_ab conj(w_a) R_ab w_b
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (a, wa) in cw.iter().enumerate() {
                        let row = &cov[a * k..(a + 1) * k];
                        let inner = row
                            .iter()
                            .zip(cw)
                            .fold(Complex64::new(0.0, 0.0), |acc, (r, wb)| acc + r * wb.conj());
                        acc += wa * inner;
                    }
                    (acc.re * scale).max(0.0)
                })
            })
            .collect();
        IntensityMap::new(values, self.grid.clone())
    }
}
