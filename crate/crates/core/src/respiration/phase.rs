use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::imaging::{Pixel, PixelImage};
use crate::sim::UniformAxis;

/// Line-of-sight displacement of one pixel, up to an additive constant.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacementTrack {
    /// m; positive toward the radar.
    pub values: Vec<f64>,
    pub pixel: Pixel,
    pub slow_time: UniformAxis,
    /// Samples where the pixel value was exactly zero; the previous phase
    /// was carried over.
    pub undefined: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VelocityTrack {
    /// m/s.
    pub values: Vec<f64>,
    pub pixel: Pixel,
    pub slow_time: UniformAxis,
}

/// Removes 2π jumps: whenever two successive phases differ by more than π
/// the remainder of the sequence is shifted by a multiple of 2π.
pub fn unwrap_phase(phases: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(phases.len());
    let mut offset = 0.0;
    for (i, &p) in phases.iter().enumerate() {
        if i > 0 {
            let d = p - phases[i - 1];
            if d.abs() > PI {
                offset -= 2.0 * PI * (d / (2.0 * PI)).round();
            }
        }
        out.push(p + offset);
    }
    out
}

/// Displacement `(λ/4π)·unwrap(∠I)` of a complex pixel series.
pub fn displacement_from_series(series: &[Complex64], wavelength: f64) -> (Vec<f64>, Vec<usize>) {
    let mut undefined = Vec::new();
    let mut last = 0.0;
    let phases: Vec<f64> = series
        .iter()
        .enumerate()
        .map(|(i, z)| {
            if z.re == 0.0 && z.im == 0.0 {
                undefined.push(i);
            } else {
                last = z.arg();
            }
            last
        })
        .collect();
    let scale = wavelength / (4.0 * PI);
    (unwrap_phase(&phases).into_iter().map(|p| p * scale).collect(), undefined)
}

pub fn displacement(img: &impl PixelImage, pixel: Pixel) -> Result<DisplacementTrack> {
    if !img.clutter_removed() {
        return Err(Error::ClutterNotRemoved);
    }
    let (values, undefined) = displacement_from_series(&img.pixel_series(pixel), img.wavelength());
    Ok(DisplacementTrack { values, pixel, slow_time: img.slow_time(), undefined })
}

/// Central differences inside, one-sided differences at the two ends.
pub fn differentiate(values: &[f64], step: f64) -> Result<Vec<f64>> {
    let n = values.len();
    if n < 3 {
        return Err(Error::InsufficientSamples { needed: 3, got: n });
    }
    let mut out = Vec::with_capacity(n);
    out.push((values[1] - values[0]) / step);
    for w in values.windows(3) {
        out.push((w[2] - w[0]) / (2.0 * step));
    }
    out.push((values[n - 1] - values[n - 2]) / step);
    Ok(out)
}

pub fn velocity(track: &DisplacementTrack) -> Result<VelocityTrack> {
    Ok(VelocityTrack {
        values: differentiate(&track.values, track.slow_time.step)?,
        pixel: track.pixel,
        slow_time: track.slow_time,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn track(values: Vec<f64>, step: f64) -> DisplacementTrack {
        let n = values.len();
        DisplacementTrack {
            values,
            pixel: Pixel::new(0, 0),
            slow_time: UniformAxis::new(0.0, step, n),
            undefined: vec![],
        }
    }

    #[test]
    fn constant_phase_gives_zero_displacement() {
        let (d, undefined) = displacement_from_series(&vec![Complex64::new(2.0, 0.0); 20], 3.8e-3);
        assert!(d.iter().all(|&x| x == 0.0));
        assert!(undefined.is_empty());
    }

    #[test]
    fn wrap_across_pi_is_removed() {
        let unwrapped = unwrap_phase(&[3.0, -3.0]);
        assert!((unwrapped[1] - (2.0 * PI - 3.0)).abs() < 1e-12);
        assert!((unwrapped[1] - 3.2832).abs() < 1e-4);
        let series = [Complex64::from_polar(1.0, 3.0), Complex64::from_polar(1.0, -3.0)];
        let (d, _) = displacement_from_series(&series, 3.8e-3);
        let expected = (2.0 * PI - 6.0) * 3.8e-3 / (4.0 * PI);
        assert!((d[1] - d[0] - expected).abs() < 1e-15);
        assert!((expected - 0.0856e-3).abs() < 0.0001e-3);
    }

    #[test]
    fn zero_samples_carry_previous_phase() {
        let series =
            [Complex64::from_polar(1.0, 0.5), Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, 0.7)];
        let (d, undefined) = displacement_from_series(&series, 4.0 * PI);
        assert_eq!(undefined, vec![1]);
        assert!((d[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn velocity_of_constant_and_linear_tracks() {
        let v = velocity(&track(vec![1.5; 10], 0.01)).unwrap();
        assert!(v.values.iter().all(|&x| x == 0.0));
        let v = velocity(&track((0..10).map(|i| 0.3 * i as f64 * 0.01).collect(), 0.01)).unwrap();
        assert!(v.values.iter().all(|&x| (x - 0.3).abs() < 1e-12));
    }

    #[test]
    fn too_short_track_is_rejected() {
        assert!(velocity(&track(vec![0.0, 1.0], 0.01)).is_err());
    }

    #[test]
    fn central_difference_error_is_second_order() {
        // d = A sin(ωt) at 100 Hz; interior error ≤ A ω³ Δt² / 6.
        let (a, period, dt) = (2e-3, 1.25, 0.01);
        let w = 2.0 * PI / period;
        let d: Vec<f64> = (0..1000).map(|i| a * (w * i as f64 * dt).sin()).collect();
        let v = velocity(&track(d, dt)).unwrap();
        let bound = a * w.powi(3) * dt * dt / 6.0;
        let worst =
            (1..999).map(|i| (v.values[i] - a * w * (w * i as f64 * dt).cos()).abs()).fold(0.0, f64::max);
        assert!(worst <= bound * 1.0001, "{worst} > {bound}");
        assert!(worst > 0.5 * bound);
    }
}
