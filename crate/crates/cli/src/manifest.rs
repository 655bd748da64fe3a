use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use mmresp_core::respiration::Method;
use mmresp_core::RunConfig;
use serde::{Deserialize, Serialize};

/// One file written by a command. Paths are relative to the manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Artifact {
    pub role: String,
    pub path: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radar: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_th: Option<f64>,
}

impl Artifact {
    pub fn new(role: &str, path: impl Into<PathBuf>) -> Self {
        Self { role: role.into(), path: path.into(), radar: None, method: None, eps_th: None }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    /// Seconds since the Unix epoch; `SOURCE_DATE_EPOCH` overrides the clock.
    pub timestamp: u64,
    pub seed: Option<u64>,
    pub inputs: Vec<PathBuf>,
    pub artifacts: Vec<Artifact>,
    pub config: RunConfig,
}

fn now() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()))
}

impl RunManifest {
    pub fn new(command: &str, config: RunConfig, seed: Option<u64>) -> Self {
        Self {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp: now(),
            seed,
            inputs: Vec::new(),
            artifacts: Vec::new(),
            config,
        }
    }

    /// Writes the manifest after checking every artifact exists beside it.
    pub fn write(&self, path: &Path) -> Result<()> {
        let dir = path.parent().unwrap_or(Path::new("."));
        for a in &self.artifacts {
            if !dir.join(&a.path).is_file() {
                bail!("artifact {} was not written", a.path.display());
            }
        }
        let text = serde_json::to_string_pretty(self)?;
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
    }

    /// Absolute location of an artifact listed in the manifest at `path`.
    pub fn resolve(path: &Path, artifact: &Artifact) -> PathBuf {
        path.parent().unwrap_or(Path::new(".")).join(&artifact.path)
    }
}

/// `conventional` or `proposed_<eps>`, used in file names.
pub fn series_tag(method: Method, eps_th: Option<f64>) -> String {
    match eps_th {
        Some(e) => format!("{method}_{e}"),
        None => method.to_string(),
    }
}

pub fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

/// File stem used to name per-input artifacts.
pub fn stem(path: &Path) -> Result<String> {
    path.file_stem()
        .and_then(|s| s.to_str())
        .map(str::to_owned)
        .with_context(|| format!("{} has no usable file name", path.display()))
}
