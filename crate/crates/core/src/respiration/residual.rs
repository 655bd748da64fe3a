use std::f64::consts::PI;

use super::{AcfSlice, PipelineConfig};
use crate::error::{Error, Result};

/// Best cosine fit of one correlation slice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineFit {
    /// Minimum mean squared misfit.
    pub epsilon: f64,
    /// Period of the best-fitting cosine, s.
    pub period: f64,
}

/// Precomputed trapezoid-weighted cosines on the candidate-period grid.
///
/// The misfit at period `p` expands to `A − 2·Σ w ρ cos + Σ w cos²`, so one
/// dot product per candidate suffices once the bank is built.
#[derive(Debug, Clone)]
pub struct CosineBank {
    lag_step: f64,
    n_lags: usize,
    tau0: f64,
    periods: Vec<f64>,
    /// Row `k` holds `w_k·cos(2π k Δτ / p_j)` for every candidate `j`.
    /// Single precision is enough to rank candidates; every reported misfit
    /// is evaluated directly in double precision.
    weighted: Vec<f32>,
    /// `Σ w_k cos²` per candidate.
    energy: Vec<f64>,
    lo: f64,
    hi: f64,
    tolerance: f64,
}

fn trapezoid_weight(k: usize, n: usize, step: f64) -> f64 {
    if k == 0 || k + 1 == n {
        0.5 * step
    } else {
        step
    }
}

impl CosineBank {
    pub fn new(cfg: &PipelineConfig, lag_step: f64) -> Self {
        let n_lags = (cfg.tau0 / lag_step).round() as usize + 1;
        let count = ((cfg.tau_l - cfg.tau_s) / cfg.fit_grid_step + 1e-9).floor() as usize + 1;
        let mut periods: Vec<f64> = (0..count).map(|j| cfg.tau_s + j as f64 * cfg.fit_grid_step).collect();
        if cfg.tau_l - periods[count - 1] > 1e-9 {
            periods.push(cfg.tau_l);
        }
        let mut weighted = Vec::with_capacity(periods.len() * n_lags);
        let mut energy = vec![0.0; periods.len()];
        for k in 0..n_lags {
            let w = trapezoid_weight(k, n_lags, lag_step);
            for (j, &p) in periods.iter().enumerate() {
                let c = (2.0 * PI * k as f64 * lag_step / p).cos();
                weighted.push((w * c) as f32);
                energy[j] += w * c * c;
            }
        }
        Self {
            lag_step,
            n_lags,
            tau0: (n_lags - 1) as f64 * lag_step,
            periods,
            weighted,
            energy,
            lo: cfg.tau_s,
            hi: cfg.tau_l,
            tolerance: cfg.fit_tolerance,
        }
    }

    pub fn lag_step(&self) -> f64 {
        self.lag_step
    }

    pub fn periods(&self) -> &[f64] {
        &self.periods
    }

    /// Misfit of `rho` against one period, evaluated directly. Cosines come
    /// from four interleaved phasor rotations so the recurrences run in
    /// parallel.
    pub fn misfit(&self, rho: &[f64], period: f64) -> f64 {
        let rho = &rho[..self.n_lags];
        let theta = 2.0 * PI * self.lag_step / period;
        let (s4, c4) = (4.0 * theta).sin_cos();
        let mut re = [0.0; 4];
        let mut im = [0.0; 4];
        for l in 0..4 {
            let (s, c) = (l as f64 * theta).sin_cos();
            re[l] = c;
            im[l] = s;
        }
        let mut acc = [0.0; 4];
        let mut chunks = rho.chunks_exact(4);
        for chunk in &mut chunks {
            for l in 0..4 {
                let d = chunk[l] - re[l];
                acc[l] += d * d;
                let next = re[l] * c4 - im[l] * s4;
                im[l] = re[l] * s4 + im[l] * c4;
                re[l] = next;
            }
        }
        let mut total = (acc[0] + acc[1]) + (acc[2] + acc[3]);
        for (l, &r) in chunks.remainder().iter().enumerate() {
            let d = r - re[l];
            total += d * d;
        }
        // Interior weight is the step; the two ends carry half of it.
        let n = self.n_lags;
        let end = rho[n - 1] - ((n - 1) as f64 * theta).cos();
        let start = rho[0] - 1.0;
        (total - 0.5 * (start * start + end * end)) * self.lag_step / self.tau0
    }

    /// Grid search followed by golden-section refinement around the best
    /// grid candidate.
    pub fn fit(&self, rho: &[f64]) -> Result<CosineFit> {
        if rho.len() < self.n_lags {
            return Err(Error::InsufficientSamples { needed: self.n_lags, got: rho.len() });
        }
        Ok(self.fit_batch(rho, rho.len()).remove(0))
    }

    /// Fits every row of `rhos`, laid out with `stride` values per row.
    /// Rows are processed in small blocks so each bank row is read once per
    /// block.
    pub(crate) fn fit_batch(&self, rhos: &[f64], stride: usize) -> Vec<CosineFit> {
        const BLOCK: usize = 4;
        assert!(stride >= self.n_lags, "rows shorter than the fit range");
        let rows: Vec<&[f64]> = rhos.chunks_exact(stride).collect();
        let n_periods = self.periods.len();
        let mut scores = vec![0.0f32; BLOCK * n_periods];
        let mut narrow = vec![0.0f32; BLOCK * self.n_lags];
        let mut fits = Vec::with_capacity(rows.len());
        for block in rows.chunks(BLOCK) {
            scores.iter_mut().for_each(|s| *s = 0.0);
            for (r, out) in block.iter().zip(narrow.chunks_exact_mut(self.n_lags)) {
                for (o, x) in out.iter_mut().zip(r.iter()) {
                    *o = *x as f32;
                }
            }
            let used = block.len() * self.n_lags;
            accumulate(&narrow[..used], self.n_lags, &self.weighted, n_periods, &mut scores);
            for (r, acc) in block.iter().zip(scores.chunks_exact(n_periods)) {
                let mut best = (f64::INFINITY, 0usize);
                for (j, (&cross, &e)) in acc.iter().zip(&self.energy).enumerate() {
                    let v = e - 2.0 * cross as f64;
                    if v < best.0 {
                        best = (v, j);
                    }
                }
                fits.push(self.refine(&r[..self.n_lags], best.1));
            }
        }
        fits
    }

    /// Golden-section search between the grid neighbours of candidate `j`.
    /// Every reported misfit is a direct evaluation.
    fn refine(&self, rho: &[f64], j: usize) -> CosineFit {
        let mut a = self.periods[j.saturating_sub(1)].max(self.lo);
        let mut b = self.periods[(j + 1).min(self.periods.len() - 1)].min(self.hi);
        let mut fit = CosineFit { epsilon: self.misfit(rho, self.periods[j]), period: self.periods[j] };
        let consider = |p: f64, e: f64, fit: &mut CosineFit| {
            if e < fit.epsilon {
                *fit = CosineFit { epsilon: e, period: p };
            }
        };
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = b - g * (b - a);
        let mut x2 = a + g * (b - a);
        let mut f1 = self.misfit(rho, x1);
        let mut f2 = self.misfit(rho, x2);
        consider(x1, f1, &mut fit);
        consider(x2, f2, &mut fit);
        while b - a > self.tolerance {
            if f1 <= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = self.misfit(rho, x1);
                consider(x1, f1, &mut fit);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = self.misfit(rho, x2);
                consider(x2, f2, &mut fit);
            }
        }
        for p in [a, b] {
            consider(p, self.misfit(rho, p), &mut fit);
        }
        fit
    }
}

/// `scores[h][j] += Σ_k rows[h][k]·bank[k][j]` as a sequence of
/// elementwise updates, so the result does not depend on vector width.
#[inline(always)]
fn accumulate_generic(rows: &[f32], n_lags: usize, bank: &[f32], n_periods: usize, scores: &mut [f32]) {
    for (k, bank_row) in bank.chunks_exact(n_periods).enumerate() {
        for (r, acc) in rows.chunks_exact(n_lags).zip(scores.chunks_exact_mut(n_periods)) {
            let x = r[k];
            for (a, c) in acc.iter_mut().zip(bank_row) {
                *a += x * c;
            }
        }
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn accumulate_avx2(rows: &[f32], n_lags: usize, bank: &[f32], n_periods: usize, scores: &mut [f32]) {
    accumulate_generic(rows, n_lags, bank, n_periods, scores)
}

fn accumulate(rows: &[f32], n_lags: usize, bank: &[f32], n_periods: usize, scores: &mut [f32]) {
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("avx2") {
        // SAFETY: the feature was detected at run time.
        return unsafe { accumulate_avx2(rows, n_lags, bank, n_periods, scores) };
    }
    accumulate_generic(rows, n_lags, bank, n_periods, scores)
}

/// `ε = min_p (1/τ0)·∫₀^τ0 (ρ(τ) − cos(2πτ/p))² dτ` over periods `p` in
/// `[tau_S, tau_L]`.
pub fn periodicity_residual(slice: &AcfSlice, cfg: &PipelineConfig) -> Result<f64> {
    Ok(CosineBank::new(cfg, slice.lag_step).fit(&slice.values)?.epsilon)
}
