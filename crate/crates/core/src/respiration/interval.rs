use std::f64::consts::PI;

use super::{AcfSlice, PipelineConfig};
use crate::error::{Error, Result};

/// Tukey window on `x ∈ [0, 1]` with tapered fraction `alpha`.
pub fn tukey(x: f64, alpha: f64) -> f64 {
    if !(0.0..=1.0).contains(&x) {
        return 0.0;
    }
    if alpha <= 0.0 {
        return 1.0;
    }
    if x < alpha / 2.0 {
        0.5 * (1.0 + (PI * (2.0 * x / alpha - 1.0)).cos())
    } else if x > 1.0 - alpha / 2.0 {
        0.5 * (1.0 + (PI * (2.0 * x / alpha - 2.0 / alpha + 1.0)).cos())
    } else {
        1.0
    }
}

/// Lag indices inside `[tau_S, tau_L]` and the Tukey weight of each.
#[derive(Debug, Clone, PartialEq)]
pub struct LagBand {
    pub first: usize,
    pub weights: Vec<f64>,
}

impl LagBand {
    pub fn new(cfg: &PipelineConfig, step: f64) -> Self {
        let first = (cfg.tau_s / step - 1e-9).ceil() as usize;
        let last = (cfg.tau_l / step + 1e-9).floor() as usize;
        let span = cfg.tau_l - cfg.tau_s;
        let weights =
            (first..=last).map(|k| tukey((k as f64 * step - cfg.tau_s) / span, cfg.tukey_alpha)).collect();
        Self { first, weights }
    }

    /// Peak lag of `h(τ)·ρ(τ)` in seconds, optionally refined with a
    /// parabola through the peak and its neighbours.
    pub fn pick(&self, rho: &[f64], step: f64, refine: bool) -> Result<f64> {
        let last = self.first + self.weights.len() - 1;
        if rho.len() <= last {
            return Err(Error::InsufficientSamples { needed: last + 1, got: rho.len() });
        }
        let weighted: Vec<f64> =
            self.weights.iter().zip(&rho[self.first..=last]).map(|(h, r)| h * r).collect();
        let mut best = 0;
        for (i, &y) in weighted.iter().enumerate() {
            if y > weighted[best] {
                best = i;
            }
        }
        if !(weighted[best] > 0.0) {
            return Err(Error::NoPeak);
        }
        let mut offset = 0.0;
        if refine && best > 0 && best + 1 < weighted.len() {
            let (a, b, c) = (weighted[best - 1], weighted[best], weighted[best + 1]);
            let curvature = a - 2.0 * b + c;
            if curvature < 0.0 {
                offset = (0.5 * (a - c) / curvature).clamp(-0.5, 0.5);
            }
        }
        Ok((self.first + best) as f64 * step + offset * step)
    }
}

/// `argmax_τ h(τ)·ρ(t, τ)` over the lag band.
pub fn estimate_interval(slice: &AcfSlice, cfg: &PipelineConfig) -> Result<f64> {
    LagBand::new(cfg, slice.lag_step).pick(&slice.values, slice.lag_step, cfg.refine_peak)
}
