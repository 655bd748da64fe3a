use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imaging::Pixel;

/// Residuals are clamped to this floor before inversion so one perfectly
/// periodic pixel cannot swamp the rest of the region.
pub const MIN_RESIDUAL: f64 = 1e-12;

/// One pixel's interval estimate and cosine-fit residual at one hop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PixelContribution {
    pub pixel: Pixel,
    pub tau: f64,
    pub epsilon: f64,
}

/// Fused interval at one estimate time.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalEstimate {
    pub time: f64,
    /// Present only when accepted.
    pub tau_hat: Option<f64>,
    /// Weighted average before the acceptance rule; absent when no pixel
    /// contributed.
    pub fused: Option<f64>,
    pub contributions: Vec<PixelContribution>,
    /// `Σ 1/ε_m`.
    pub weight_sum: f64,
    /// Number of pixels in the region.
    pub region_size: usize,
    pub accepted: bool,
}

impl IntervalEstimate {
    /// Estimate with no usable pixel at this hop.
    pub fn empty(time: f64, region_size: usize) -> Self {
        Self {
            time,
            tau_hat: None,
            fused: None,
            contributions: Vec::new(),
            weight_sum: 0.0,
            region_size,
            accepted: false,
        }
    }

    /// Re-applies the acceptance rule `Σ 1/ε_m ≥ M/ε_th`.
    pub fn regate(&self, eps_th: f64) -> Self {
        let accepted = self.fused.is_some() && self.weight_sum >= self.region_size as f64 / eps_th;
        Self { tau_hat: if accepted { self.fused } else { None }, accepted, ..self.clone() }
    }
}

/// Inverse-residual weighted average of the pixel intervals. The estimate
/// is accepted when `Σ 1/ε_m ≥ M/ε_th` with `M` the region size.
pub fn fuse_intervals(
    time: f64,
    contributions: Vec<PixelContribution>,
    region_size: usize,
    eps_th: f64,
) -> Result<IntervalEstimate> {
    if contributions.is_empty() {
        return Err(Error::EmptyRegion);
    }
    if !(eps_th > 0.0) {
        return Err(Error::InvalidParameter(format!("eps_th must be positive, got {eps_th}")));
    }
    let (mut num, mut den) = (0.0, 0.0);
    for c in &contributions {
        let w = 1.0 / c.epsilon.max(MIN_RESIDUAL);
        num += w * c.tau;
        den += w;
    }
    let est = IntervalEstimate {
        time,
        tau_hat: None,
        fused: Some(num / den),
        contributions,
        weight_sum: den,
        region_size: region_size.max(1),
        accepted: false,
    };
    Ok(est.regate(eps_th))
}
