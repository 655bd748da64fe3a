use std::fmt;

use serde::{Deserialize, Serialize};

use super::IntervalEstimate;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Single strongest pixel, never gated.
    Conventional,
    /// Residual-weighted fusion over the region, gated.
    Proposed,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Conventional => "conventional",
            Method::Proposed => "proposed",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conventional" => Ok(Method::Conventional),
            "proposed" => Ok(Method::Proposed),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        }
    }
}

/// Interval estimates at evenly spaced hop times.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSeries {
    pub method: Method,
    /// Threshold used for gating; `None` for the ungated baseline.
    pub eps_th: Option<f64>,
    pub estimates: Vec<IntervalEstimate>,
}

impl IntervalSeries {
    pub fn len(&self) -> usize {
        self.estimates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.estimates.is_empty()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.estimates.iter().map(|e| e.time)
    }

    pub fn accepted_count(&self) -> usize {
        self.estimates.iter().filter(|e| e.accepted).count()
    }
}
