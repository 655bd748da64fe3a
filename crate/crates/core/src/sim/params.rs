use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::SPEED_OF_LIGHT;

/// FMCW chirp and sampling parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RadarParams {
    /// Hz.
    pub center_frequency: f64,
    /// Hz.
    pub bandwidth: f64,
    /// s.
    pub chirp_duration: f64,
    pub fast_time_samples: usize,
    /// Chirps per second (Hz).
    pub slow_time_rate: f64,
    /// s.
    pub duration: f64,
}

impl Default for RadarParams {
    fn default() -> Self {
        Self {
            center_frequency: 79e9,
            bandwidth: 3.6e9,
            chirp_duration: 100e-6,
            fast_time_samples: 256,
            slow_time_rate: 100.0,
            duration: 120.0,
        }
    }
}

impl RadarParams {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")))
            }
        };
        positive("center_frequency", self.center_frequency)?;
        positive("bandwidth", self.bandwidth)?;
        positive("chirp_duration", self.chirp_duration)?;
        positive("slow_time_rate", self.slow_time_rate)?;
        positive("duration", self.duration)?;
        if self.fast_time_samples < 2 {
            return Err(Error::InvalidParameter("fast_time_samples must be at least 2".into()));
        }
        if self.chirp_duration > 1.0 / self.slow_time_rate {
            return Err(Error::InvalidParameter(
                "chirp_duration exceeds the slow-time sampling interval".into(),
            ));
        }
        let n = self.duration * self.slow_time_rate;
        if (n - n.round()).abs() > 1e-9 * n.max(1.0) {
            return Err(Error::InvalidParameter(format!(
                "duration x slow_time_rate = {n} is not an integer sample count"
            )));
        }
        Ok(())
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.center_frequency
    }

    /// Range resolution c / 2B.
    pub fn range_resolution(&self) -> f64 {
        SPEED_OF_LIGHT / (2.0 * self.bandwidth)
    }

    /// Chirp slope in Hz/s.
    pub fn slope(&self) -> f64 {
        self.bandwidth / self.chirp_duration
    }

    pub fn slow_time_samples(&self) -> usize {
        (self.duration * self.slow_time_rate).round() as usize
    }

    pub fn fast_time_step(&self) -> f64 {
        self.chirp_duration / self.fast_time_samples as f64
    }

    /// Largest range whose beat tone stays below the complex sampling rate,
    /// keeping a one-bin guard.
    pub fn max_unambiguous_range(&self) -> f64 {
        (self.fast_time_samples - 1) as f64 * self.range_resolution()
    }

    pub fn slow_time_axis(&self) -> Vec<f64> {
        let dt = 1.0 / self.slow_time_rate;
        (0..self.slow_time_samples()).map(|n| n as f64 * dt).collect()
    }

    /// Fast-time sample instants, centred on the chirp midpoint.
    pub fn fast_time_axis(&self) -> Vec<f64> {
        let n = self.fast_time_samples;
        let dt = self.fast_time_step();
        let half = (n as f64 - 1.0) / 2.0;
        (0..n).map(|i| (i as f64 - half) * dt).collect()
    }
}
