//! Plain-text CSV artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::eval::{MetricsReport, PairedSamples, TruthSamples};
use crate::imaging::{IntensityMap, RegionMask};
use crate::respiration::{IntervalEstimate, IntervalSeries, Method};

pub const INTERVAL_HEADER: &str = "time_s,tau_hat_s,accepted,weight_sum,M";
pub const METRICS_HEADER: &str =
    "method,eps_th,rms_inter_radar,correlation,acquisition_rate,rms_vs_truth,n_common,rms_inter_radar_ungated";

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

pub fn format_interval_csv(series: &IntervalSeries) -> String {
    let mut out = String::from(INTERVAL_HEADER);
    out.push('\n');
    for e in &series.estimates {
        let _ = writeln!(
            out,
            "{:.3},{},{},{},{}",
            e.time,
            opt(e.tau_hat),
            e.accepted as u8,
            e.weight_sum,
            e.region_size
        );
    }
    out
}

pub fn write_interval_csv(path: &Path, series: &IntervalSeries) -> Result<()> {
    Ok(fs::write(path, format_interval_csv(series))?)
}

fn parse_err(path: &Path, line: usize, msg: impl std::fmt::Display) -> Error {
    Error::CorruptFile(format!("{}:{}: {msg}", path.display(), line))
}

/// Reads an interval CSV. The file does not record the method or threshold,
/// so the caller supplies them.
pub fn read_interval_csv(path: &Path, method: Method, eps_th: Option<f64>) -> Result<IntervalSeries> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == INTERVAL_HEADER => {}
        _ => return Err(parse_err(path, 1, format!("expected header {INTERVAL_HEADER:?}"))),
    }
    let mut estimates = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            return Err(parse_err(path, i + 1, format!("expected 5 fields, got {}", f.len())));
        }
        let num = |s: &str| s.trim().parse::<f64>().map_err(|e| parse_err(path, i + 1, e));
        let tau_hat = if f[1].trim().is_empty() { None } else { Some(num(f[1])?) };
        let accepted = match f[2].trim() {
            "1" => true,
            "0" => false,
            other => return Err(parse_err(path, i + 1, format!("accepted must be 0 or 1, got {other:?}"))),
        };
        if accepted != tau_hat.is_some() {
            return Err(parse_err(path, i + 1, "tau_hat_s must be present exactly when accepted"));
        }
        estimates.push(IntervalEstimate {
            time: num(f[0])?,
            tau_hat,
            fused: tau_hat,
            contributions: Vec::new(),
            weight_sum: num(f[3])?,
            region_size: f[4].trim().parse().map_err(|e| parse_err(path, i + 1, e))?,
            accepted,
        });
    }
    Ok(IntervalSeries { method, eps_th, estimates })
}

pub fn format_metrics_csv(reports: &[MetricsReport]) -> String {
    let mut out = String::from(METRICS_HEADER);
    out.push('\n');
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6},{},{},{}",
            r.method,
            r.eps_th.map(|e| e.to_string()).unwrap_or_default(),
            opt(r.rms_inter_radar),
            opt(r.correlation),
            r.acquisition_rate,
            opt(r.rms_vs_truth),
            r.n_common,
            opt(r.rms_inter_radar_ungated)
        );
    }
    out
}

pub fn write_metrics_csv(path: &Path, reports: &[MetricsReport]) -> Result<()> {
    Ok(fs::write(path, format_metrics_csv(reports))?)
}

/// Fixed-width table for terminal output.
pub fn format_metrics_table(reports: &[MetricsReport]) -> String {
    let cell = |v: Option<f64>| v.map(|x| format!("{x:.4}")).unwrap_or_else(|| "-".into());
    let mut out = format!(
        "{:<20} {:>10} {:>10} {:>10} {:>10} {:>9}\n",
        "method", "rms [s]", "C_cor", "acq rate", "truth [s]", "n_common"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:<20} {:>10} {:>10} {:>10.4} {:>10} {:>9}",
            r.label(),
            cell(r.rms_inter_radar),
            cell(r.correlation),
            r.acquisition_rate,
            cell(r.rms_vs_truth),
            r.n_common
        );
    }
    out
}

pub const TRUTH_HEADER: &str = "time_s,tau_true_s,motion_active";

pub fn write_truth_csv(path: &Path, truth: &TruthSamples) -> Result<()> {
    let mut out = String::from(TRUTH_HEADER);
    out.push('\n');
    for ((t, v), m) in truth.times.iter().zip(&truth.interval).zip(&truth.motion_active) {
        let v = if v.is_finite() { format!("{v:.6}") } else { String::new() };
        let _ = writeln!(out, "{t:.3},{v},{}", *m as u8);
    }
    Ok(fs::write(path, out)?)
}

pub fn read_truth_csv(path: &Path) -> Result<TruthSamples> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == TRUTH_HEADER => {}
        _ => return Err(parse_err(path, 1, format!("expected header {TRUTH_HEADER:?}"))),
    }
    let mut truth = TruthSamples::default();
    for (i, line) in lines.filter(|(_, l)| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        if f.len() != 3 {
            return Err(parse_err(path, i + 1, format!("expected 3 fields, got {}", f.len())));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| parse_err(path, i + 1, e));
        truth.times.push(num(f[0])?);
        truth.interval.push(if f[1].is_empty() { f64::NAN } else { num(f[1])? });
        truth.motion_active.push(match f[2] {
            "1" => true,
            "0" => false,
            other => {
                return Err(parse_err(path, i + 1, format!("motion_active must be 0 or 1, got {other:?}")))
            }
        });
    }
    Ok(truth)
}

/// Mutually accepted estimate pairs of two radar units.
pub fn write_pairs_csv(path: &Path, pairs: &PairedSamples) -> Result<()> {
    let mut out = String::from("time_s,radar1_tau_s,radar2_tau_s\n");
    for ((t, a), b) in pairs.times.iter().zip(&pairs.a).zip(&pairs.b) {
        let _ = writeln!(out, "{t:.3},{a:.6},{b:.6}");
    }
    Ok(fs::write(path, out)?)
}

/// Time-averaged intensity with region membership.
pub fn write_intensity_csv(path: &Path, map: &IntensityMap, region: Option<&RegionMask>) -> Result<()> {
    let mut out = String::from("range_m,angle_deg,intensity,in_region\n");
    for i in 0..map.grid.n_cells() {
        let p = map.grid.pixel(i);
        let member = region.map(|r| r.contains(i) as u8).unwrap_or(0);
        let _ = writeln!(
            out,
            "{:.4},{:.2},{:e},{}",
            map.grid.range_bins[p.range], map.grid.angle_bins[p.angle], map.values[i], member
        );
    }
    Ok(fs::write(path, out)?)
}
