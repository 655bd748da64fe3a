//! TOML run configuration covering simulation, processing and evaluation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::respiration::PipelineConfig;
use crate::sim::{build_virtual_array, ArrayLayout, RadarParams, SceneConfig};

/// Transmitter and receiver positions along the array axis, in wavelengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ArrayConfig {
    pub tx: Vec<f64>,
    pub rx: Vec<f64>,
}

impl Default for ArrayConfig {
    fn default() -> Self {
        Self { tx: vec![0.0, 2.0, 4.0], rx: vec![0.0, 0.5, 1.0, 1.5] }
    }
}

impl ArrayConfig {
    pub fn layout(&self, wavelength: f64) -> Result<ArrayLayout> {
        let scale = |v: &[f64]| v.iter().map(|x| x * wavelength).collect::<Vec<_>>();
        build_virtual_array(&scale(&self.tx), &scale(&self.rx), wavelength)
    }
}

/// Thresholds evaluated for the proposed method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvaluationConfig {
    pub eps_th: Vec<f64>,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        Self { eps_th: vec![0.5, 0.2] }
    }
}

/// Parameter grid of the sweep command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub eps_th: Vec<f64>,
    pub tau0: Vec<f64>,
    pub seeds: Vec<u64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { eps_th: vec![0.5, 0.2], tau0: vec![1.5, 2.0, 2.5], seeds: vec![1] }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.eps_th.is_empty() || self.tau0.is_empty() || self.seeds.is_empty() {
            return Err(Error::Config("sweep grid must have at least one eps_th, tau0 and seed".into()));
        }
        if self.eps_th.iter().chain(&self.tau0).any(|v| !(*v > 0.0)) {
            return Err(Error::Config("sweep eps_th and tau0 values must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub radar: RadarParams,
    pub array: ArrayConfig,
    pub scene: SceneConfig,
    pub pipeline: PipelineConfig,
    pub evaluation: EvaluationConfig,
    pub sweep: SweepConfig,
}

impl RunConfig {
    /// Parses and validates. Parse errors carry the offending line and key.
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }

    pub fn layout(&self) -> Result<ArrayLayout> {
        self.array.layout(self.radar.wavelength())
    }

    pub fn validate(&self) -> Result<()> {
        self.radar.validate()?;
        self.layout()?;
        self.scene.validate()?;
        self.pipeline.validate()?;
        if self.evaluation.eps_th.iter().any(|e| !(*e > 0.0)) {
            return Err(Error::Config("evaluation eps_th values must be positive".into()));
        }
        self.sweep.validate()
    }
}
