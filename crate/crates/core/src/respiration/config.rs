use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imaging::{DEFAULT_NBAR, DEFAULT_SIDELOBE_DB};

/// Processing parameters for imaging and interval estimation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PipelineConfig {
    /// Region threshold relative to the peak intensity, dB.
    pub eta: f64,
    /// Correlation window width, s.
    #[serde(rename = "T0")]
    pub t0: f64,
    /// Lower edge of the interval search band, s.
    #[serde(rename = "tau_S")]
    pub tau_s: f64,
    /// Upper edge of the interval search band, s.
    #[serde(rename = "tau_L")]
    pub tau_l: f64,
    /// Upper limit of the cosine-fit integral, s.
    pub tau0: f64,
    /// Residual threshold of the acceptance rule.
    pub eps_th: f64,
    /// Spacing between estimate times, s.
    pub hop: f64,
    /// Tapered fraction of the Tukey lag window.
    pub tukey_alpha: f64,
    /// Candidate-period grid step of the cosine fit, s.
    pub fit_grid_step: f64,
    /// Golden-section stopping width of the cosine fit, s.
    pub fit_tolerance: f64,
    /// Three-point parabolic refinement of the interval peak.
    pub refine_peak: bool,
    /// Half-width (m) of the range window imaged around the strongest moving
    /// range bin; 0 images every bin.
    pub range_gate: f64,
    pub angle_min: f64,
    pub angle_max: f64,
    pub angle_step: f64,
    pub taylor_sidelobe_db: f64,
    pub taylor_nbar: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            eta: -20.0,
            t0: 2.0,
            tau_s: 0.8,
            tau_l: 2.0,
            tau0: 2.0,
            eps_th: 0.5,
            hop: 0.1,
            tukey_alpha: 0.25,
            fit_grid_step: 0.005,
            fit_tolerance: 0.0005,
            refine_peak: true,
            range_gate: 0.5,
            angle_min: 30.0,
            angle_max: 150.0,
            angle_step: 1.0,
            taylor_sidelobe_db: DEFAULT_SIDELOBE_DB,
            taylor_nbar: DEFAULT_NBAR,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.tau_s > 0.0 && self.tau_s < self.tau_l && self.tau_l <= self.t0) {
            return fail(format!(
                "need 0 < tau_S < tau_L <= T0, got {} / {} / {}",
                self.tau_s, self.tau_l, self.t0
            ));
        }
        if !(self.eps_th > 0.0) {
            return fail(format!("eps_th must be positive, got {}", self.eps_th));
        }
        if !(self.tau0 > 0.0 && self.hop > 0.0) {
            return fail("tau0 and hop must be positive".into());
        }
        if !(0.0..=1.0).contains(&self.tukey_alpha) {
            return fail(format!("tukey_alpha {} outside [0, 1]", self.tukey_alpha));
        }
        if !(self.fit_grid_step > 0.0 && self.fit_tolerance > 0.0) {
            return fail("cosine-fit step and tolerance must be positive".into());
        }
        if !(self.angle_min > 0.0
            && self.angle_max < 180.0
            && self.angle_min <= self.angle_max
            && self.angle_step > 0.0)
        {
            return fail("angle grid must lie in (0°, 180°) with a positive step".into());
        }
        if self.eta.is_nan() || self.range_gate.is_nan() || self.range_gate < 0.0 {
            return fail("eta and range_gate must be numbers, range_gate >= 0".into());
        }
        Ok(())
    }

    pub fn angle_bins(&self) -> Vec<f64> {
        let n = ((self.angle_max - self.angle_min) / self.angle_step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.angle_min + i as f64 * self.angle_step).collect()
    }

    /// Largest lag the correlation must cover.
    pub fn max_lag(&self) -> f64 {
        self.tau_l.max(self.tau0)
    }
}
