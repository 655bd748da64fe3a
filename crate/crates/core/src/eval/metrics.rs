use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::respiration::IntervalSeries;

/// Two series' estimates at their mutually accepted hops.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PairedSamples {
    pub times: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl PairedSamples {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Relative tolerance when matching hop times of two series.
const TIME_TOLERANCE: f64 = 1e-6;

fn check_cadence(a: &IntervalSeries, b: &IntervalSeries) -> Result<()> {
    let same = a.len() == b.len() && a.times().zip(b.times()).all(|(x, y)| (x - y).abs() <= TIME_TOLERANCE);
    if same {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("series hop times differ ({} vs {} hops)", a.len(), b.len())))
    }
}

fn accepted_count(s: &IntervalSeries) -> usize {
    s.estimates.iter().filter(|e| e.accepted).count()
}

/// Pairs kept only where both series are accepted at the same hop.
pub fn align_series(a: &IntervalSeries, b: &IntervalSeries) -> Result<PairedSamples> {
    check_cadence(a, b)?;
    let mut out = PairedSamples::default();
    for (x, y) in a.estimates.iter().zip(&b.estimates) {
        if let (Some(ta), Some(tb)) = (x.tau_hat, y.tau_hat) {
            out.times.push(x.time);
            out.a.push(ta);
            out.b.push(tb);
        }
    }
    if out.is_empty() {
        return Err(Error::NoOverlap { accepted_a: accepted_count(a), accepted_b: accepted_count(b) });
    }
    Ok(out)
}

/// Pairs of pre-gate fused values, ignoring the acceptance rule.
pub fn align_ungated(a: &IntervalSeries, b: &IntervalSeries) -> Result<PairedSamples> {
    check_cadence(a, b)?;
    let mut out = PairedSamples::default();
    for (x, y) in a.estimates.iter().zip(&b.estimates) {
        if let (Some(ta), Some(tb)) = (x.fused, y.fused) {
            out.times.push(x.time);
            out.a.push(ta);
            out.b.push(tb);
        }
    }
    if out.is_empty() {
        return Err(Error::NoOverlap { accepted_a: accepted_count(a), accepted_b: accepted_count(b) });
    }
    Ok(out)
}

/// Root-mean-square difference between the two sides.
pub fn rms_error(pairs: &PairedSamples) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::NoOverlap { accepted_a: 0, accepted_b: 0 });
    }
    let ss: f64 = pairs.a.iter().zip(&pairs.b).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok((ss / pairs.len() as f64).sqrt())
}

/// Pearson correlation coefficient.
pub fn correlation(pairs: &PairedSamples) -> Result<f64> {
    let n = pairs.len();
    if n < 2 {
        return Err(Error::InsufficientSamples { needed: 2, got: n });
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / n as f64;
    let (ma, mb) = (mean(&pairs.a), mean(&pairs.b));
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in pairs.a.iter().zip(&pairs.b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(Error::DegenerateVariance);
    }
    Ok((sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0))
}

/// Fraction of hops with an accepted estimate.
pub fn acquisition_rate(series: &IntervalSeries) -> Result<f64> {
    if series.is_empty() {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    }
    Ok(accepted_count(series) as f64 / series.len() as f64)
}

/// Squared errors of a series' own accepted hops against the true interval
/// at each hop time. Hops without a finite truth are skipped.
pub fn truth_errors(series: &IntervalSeries, truth: &[f64]) -> Result<Vec<f64>> {
    if truth.len() != series.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} truth values for {} hops",
            truth.len(),
            series.len()
        )));
    }
    Ok(series
        .estimates
        .iter()
        .zip(truth)
        .filter_map(|(e, t)| match e.tau_hat {
            Some(tau) if t.is_finite() => Some((tau - t) * (tau - t)),
            _ => None,
        })
        .collect())
}
