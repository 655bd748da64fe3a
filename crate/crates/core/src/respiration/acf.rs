//! Normalized short-time autocorrelation of a velocity track.

use super::{PipelineConfig, VelocityTrack};
use crate::error::{Error, Result};

/// Windows with less trapezoidal energy than this are treated as silent.
pub const MIN_WINDOW_ENERGY: f64 = 1e-20;

/// `ρ(t, τ)` on the lag grid `τ_k = k·lag_step`, `k = 0..values.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct AcfSlice {
    pub center_time: f64,
    pub lag_step: f64,
    pub values: Vec<f64>,
}

impl AcfSlice {
    pub fn lag(&self, k: usize) -> f64 {
        k as f64 * self.lag_step
    }

    /// Largest lag covered, s.
    pub fn max_lag(&self) -> f64 {
        self.lag(self.values.len().saturating_sub(1))
    }
}

/// Sample counts derived from a [`PipelineConfig`] at one sampling step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LagGeometry {
    /// Samples on each side of the window centre.
    pub half_window: usize,
    /// Largest lag index.
    pub max_lag: usize,
}

impl LagGeometry {
    pub fn new(cfg: &PipelineConfig, step: f64) -> Self {
        Self {
            half_window: (0.5 * cfg.t0 / step).round() as usize,
            max_lag: (cfg.max_lag() / step).round() as usize,
        }
    }

    /// Whether a window centred on sample `c` fits in a record of `n`.
    pub fn fits(&self, c: usize, n: usize) -> bool {
        c >= self.half_window + self.max_lag && c + self.half_window < n
    }

    /// First valid centre index.
    pub fn first_center(&self) -> usize {
        self.half_window + self.max_lag
    }
}

/// Four-accumulator dot product. The fixed association order keeps results
/// identical wherever it is used.
#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0f64; 4];
    let ca = a.chunks_exact(4);
    let cb = b.chunks_exact(4);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        acc[0] += x[0] * y[0];
        acc[1] += x[1] * y[1];
        acc[2] += x[2] * y[2];
        acc[3] += x[3] * y[3];
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (x, y) in ra.iter().zip(rb) {
        s += x * y;
    }
    s
}

/// Trapezoidal sum of `a[i]·b[i]` (half weight on both end samples).
#[inline]
pub(crate) fn trapezoid_dot(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    dot(a, b) - 0.5 * (a[0] * b[0] + a[n - 1] * b[n - 1])
}

/// Trapezoidal energy of every length-`2h+1` window, indexed by start.
pub(crate) fn window_energies(v: &[f64], half_window: usize) -> Vec<f64> {
    let len = 2 * half_window + 1;
    if v.len() < len {
        return Vec::new();
    }
    (0..=v.len() - len)
        .map(|s| {
            let w = &v[s..s + len];
            trapezoid_dot(w, w)
        })
        .collect()
}

/// Correlation values for the window centred on sample `c`, using
/// precomputed window energies (`energies[s]` for a window starting at `s`).
pub(crate) fn acf_at(
    v: &[f64],
    energies: &[f64],
    c: usize,
    geom: LagGeometry,
    out: &mut Vec<f64>,
) -> Result<()> {
    let h = geom.half_window;
    let start = c - h;
    let len = 2 * h + 1;
    let head = &v[start..start + len];
    let e1 = energies[start];
    if e1 < MIN_WINDOW_ENERGY {
        return Err(Error::DegenerateWindow { energy: e1 });
    }
    out.clear();
    for k in 0..=geom.max_lag {
        let e2 = energies[start - k];
        if e2 < MIN_WINDOW_ENERGY {
            return Err(Error::DegenerateWindow { energy: e2 });
        }
        let cross = trapezoid_dot(head, &v[start - k..start - k + len]);
        out.push(cross / (e1 * e2).sqrt());
    }
    Ok(())
}

/// `ρ(t, τ) = ∫ v(t+t')·v(t+t'-τ) dt' / √D` over `t' ∈ [-T0/2, T0/2]`,
/// with `D` the product of the two windowed energies. Integrals are
/// trapezoidal sums on the slow-time grid; lags run from 0 to
/// `max(tau_L, tau0)`.
pub fn short_time_acf(v: &VelocityTrack, t: f64, cfg: &PipelineConfig) -> Result<AcfSlice> {
    let step = v.slow_time.step;
    let geom = LagGeometry::new(cfg, step);
    let pos = (t - v.slow_time.start) / step;
    let c = pos.round();
    let n = v.values.len();
    if c < 0.0 || !geom.fits(c as usize, n) {
        return Err(Error::WindowOutOfRecord {
            start: t - 0.5 * cfg.t0 - cfg.max_lag(),
            end: t + 0.5 * cfg.t0,
        });
    }
    let c = c as usize;
    let h = geom.half_window;
    let lo = c - h - geom.max_lag;
    let energies = window_energies(&v.values[lo..c + h + 1], h);
    let mut values = Vec::with_capacity(geom.max_lag + 1);
    acf_at(&v.values[lo..], &energies, c - lo, geom, &mut values)?;
    Ok(AcfSlice { center_time: v.slow_time.value(c), lag_step: step, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imaging::Pixel;
    use crate::sim::UniformAxis;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn track(values: Vec<f64>) -> VelocityTrack {
        let n = values.len();
        VelocityTrack { values, pixel: Pixel::new(0, 0), slow_time: UniformAxis::new(0.0, 0.01, n) }
    }

    /// Independent double loop straight from the definition.
    fn naive(v: &[f64], c: usize, h: usize, max_lag: usize) -> Vec<f64> {
        let weight = |i: usize| if i == 0 || i == 2 * h { 0.5 } else { 1.0 };
        (0..=max_lag)
            .map(|k| {
                let (mut cross, mut e1, mut e2) = (0.0, 0.0, 0.0);
                for i in 0..=2 * h {
                    let a = v[c - h + i];
                    let b = v[c - h + i - k];
                    cross += weight(i) * a * b;
                    e1 += weight(i) * a * a;
                    e2 += weight(i) * b * b;
                }
                cross / (e1 * e2).sqrt()
            })
            .collect()
    }

    #[test]
    fn zero_lag_is_one() {
        let v: Vec<f64> = (0..600).map(|i| (i as f64 * 0.07).sin() + 0.3).collect();
        let s = short_time_acf(&track(v), 4.0, &PipelineConfig::default()).unwrap();
        assert!((s.values[0] - 1.0).abs() < 1e-12);
        assert_eq!(s.values.len(), 201);
    }

    #[test]
    fn sinusoid_correlates_at_its_period() {
        let v: Vec<f64> = (0..800).map(|i| (2.0 * PI * i as f64 * 0.01 / 1.25).sin()).collect();
        let s = short_time_acf(&track(v), 5.0, &PipelineConfig::default()).unwrap();
        assert!(s.values[125] >= 0.95, "{}", s.values[125]);
    }

    #[test]
    fn matches_double_loop_on_small_random_record() {
        // 200 samples with T0 = 0.6 s and lags to 1.0 s.
        let cfg = PipelineConfig { t0: 0.6, tau_s: 0.2, tau_l: 0.6, tau0: 1.0, ..Default::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let v: Vec<f64> = (0..200).map(|_| rng.random_range(-1.0..1.0)).collect();
            let c = 160;
            let s = short_time_acf(&track(v.clone()), c as f64 * 0.01, &cfg).unwrap();
            let reference = naive(&v, c, 30, 100);
            for (a, b) in s.values.iter().zip(&reference) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn silent_window_is_degenerate() {
        let s = short_time_acf(&track(vec![0.0; 600]), 4.0, &PipelineConfig::default());
        assert!(matches!(s, Err(Error::DegenerateWindow { .. })));
    }

    #[test]
    fn window_must_fit_in_record() {
        let v = vec![1.0; 600];
        let cfg = PipelineConfig::default();
        assert!(matches!(short_time_acf(&track(v.clone()), 2.9, &cfg), Err(Error::WindowOutOfRecord { .. })));
        assert!(matches!(short_time_acf(&track(v), 5.0, &cfg), Err(Error::WindowOutOfRecord { .. })));
    }

    #[test]
    fn white_noise_correlation_is_small_at_long_lags() {
        // |ρ| ≤ 3/√(T0·fs) for τ ≥ 0.5 s; check the fraction of lags
        // exceeding the bound over many seeds.
        let cfg = PipelineConfig::default();
        let bound = 3.0 / (cfg.t0 * 100.0f64).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let (mut over, mut total) = (0usize, 0usize);
        for _ in 0..200 {
            let v: Vec<f64> = (0..600).map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal)).collect();
            let s = short_time_acf(&track(v), 4.0, &cfg).unwrap();
            for r in &s.values[50..] {
                total += 1;
                if r.abs() > bound {
                    over += 1;
                }
            }
        }
        let frac = over as f64 / total as f64;
        assert!(frac < 0.006, "fraction above bound {frac}");
    }
}
