use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MotionKind {
    QuasiperiodicRespiration,
    TransientBursts,
    None,
}

/// Parameters of one displacement generator. Fields irrelevant to `kind`
/// are ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MotionModel {
    pub kind: MotionKind,
    /// Respiration displacement amplitude, m.
    pub amplitude: f64,
    /// Mean respiratory interval, s.
    pub base_interval: f64,
    /// Maximum fractional deviation of the interval from `base_interval`.
    pub interval_drift: f64,
    /// Burst events per second.
    pub burst_rate: f64,
    /// s.
    pub burst_duration: f64,
    /// Posture excursion scale, m.
    pub burst_amplitude: f64,
}

impl Default for MotionModel {
    fn default() -> Self {
        Self::none()
    }
}

impl MotionModel {
    pub fn none() -> Self {
        Self {
            kind: MotionKind::None,
            amplitude: 0.0,
            base_interval: 1.3,
            interval_drift: 0.0,
            burst_rate: 0.0,
            burst_duration: 0.0,
            burst_amplitude: 0.0,
        }
    }

    pub fn respiration(amplitude: f64, base_interval: f64, interval_drift: f64) -> Self {
        Self {
            kind: MotionKind::QuasiperiodicRespiration,
            amplitude,
            base_interval,
            interval_drift,
            ..Self::none()
        }
    }

    pub fn bursts(rate: f64, duration: f64, amplitude: f64) -> Self {
        Self {
            kind: MotionKind::TransientBursts,
            burst_rate: rate,
            burst_duration: duration,
            burst_amplitude: amplitude,
            ..Self::none()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self.kind {
            MotionKind::None => Ok(()),
            MotionKind::QuasiperiodicRespiration => {
                if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
                    return bad(format!("respiration amplitude {} must be >= 0", self.amplitude));
                }
                if !(self.base_interval > 0.5 && self.base_interval < 3.0) {
                    return bad(format!("base_interval {} outside (0.5 s, 3.0 s)", self.base_interval));
                }
                if !(0.0..1.0).contains(&self.interval_drift) {
                    return bad(format!("interval_drift {} outside [0, 1)", self.interval_drift));
                }
                Ok(())
            }
            MotionKind::TransientBursts => {
                let fields = [
                    ("burst_rate", self.burst_rate),
                    ("burst_duration", self.burst_duration),
                    ("burst_amplitude", self.burst_amplitude),
                ];
                for (name, v) in fields {
                    if !(v >= 0.0 && v.is_finite()) {
                        return bad(format!("{name} {v} must be >= 0"));
                    }
                }
                if self.burst_rate > 0.0 && self.burst_duration <= 0.0 {
                    return bad("burst_duration must be positive when bursts occur".into());
                }
                Ok(())
            }
        }
    }
}

/// A static point reflector, placed in polar coordinates about the scene
/// origin (angle measured from the +x baseline).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClutterScatterer {
    pub range: f64,
    pub angle: f64,
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SceneConfig {
    /// Distance of the target's rest position from the scene origin, m.
    pub target_range: f64,
    /// Degrees from the +x baseline.
    pub target_angle: f64,
    pub respiration: MotionModel,
    pub body_motion: MotionModel,
    pub clutter_scatterers: Vec<ClutterScatterer>,
    pub target_rcs_amplitude: f64,
    /// Standard deviation of the complex noise added to every beat sample.
    pub noise_std: f64,
    pub seed: u64,
    /// (x, y) of each radar unit's array origin, m.
    pub radar_positions: Vec<[f64; 2]>,
}

impl Default for SceneConfig {
    fn default() -> Self {
        Self {
            target_range: 6.0,
            target_angle: 80.0,
            respiration: MotionModel::respiration(1.0e-3, 1.3, 0.23),
            body_motion: MotionModel::bursts(1.0 / 15.0, 4.0, 0.03),
            clutter_scatterers: vec![
                ClutterScatterer { range: 4.5, angle: 60.0, amplitude: 10.0 },
                ClutterScatterer { range: 7.5, angle: 105.0, amplitude: 10.0 },
                ClutterScatterer { range: 6.3, angle: 120.0, amplitude: 5.0 },
            ],
            target_rcs_amplitude: 1.0,
            noise_std: 2.0,
            seed: 1,
            radar_positions: vec![[-0.5, 0.0], [3.0, 1.0]],
        }
    }
}

impl SceneConfig {
    /// Rest position of the target in scene coordinates.
    pub fn target_position(&self) -> [f64; 2] {
        polar_to_xy(self.target_range, self.target_angle)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_range > 0.0 && self.target_range.is_finite()) {
            return Err(Error::InvalidParameter("target_range must be positive".into()));
        }
        if self.target_position()[1] < 0.0 {
            return Err(Error::InvalidParameter("target must lie in the half-plane y >= 0".into()));
        }
        if self.radar_positions.is_empty() || self.radar_positions.len() > 2 {
            return Err(Error::InvalidParameter(format!(
                "expected 1 or 2 radar units, got {}",
                self.radar_positions.len()
            )));
        }
        if !(self.noise_std >= 0.0 && self.noise_std.is_finite()) {
            return Err(Error::InvalidParameter("noise_std must be >= 0".into()));
        }
        if !self.target_rcs_amplitude.is_finite() {
            return Err(Error::InvalidParameter("target_rcs_amplitude must be finite".into()));
        }
        for c in &self.clutter_scatterers {
            if polar_to_xy(c.range, c.angle)[1] < 0.0 || c.range < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "clutter scatterer at ({}, {}) lies outside y >= 0",
                    c.range, c.angle
                )));
            }
        }
        self.respiration.validate()?;
        self.body_motion.validate()
    }
}

pub(crate) fn polar_to_xy(range: f64, angle_deg: f64) -> [f64; 2] {
    let a = angle_deg.to_radians();
    [range * a.cos(), range * a.sin()]
}
