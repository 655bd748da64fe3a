//! Invariant checks shared by the property tests and the acceptance suite.
//! Each returns a description of the first violation.

use mmresp_core::imaging::Pixel;
use mmresp_core::respiration::{
    fuse_intervals, short_time_acf, HopAnalyzer, HopOutcome, PipelineConfig, PixelContribution, VelocityTrack,
};
use mmresp_core::sim::UniformAxis;

pub type Check = Result<(), String>;

pub const STEP: f64 = 0.01;

pub fn track(values: Vec<f64>) -> VelocityTrack {
    let n = values.len();
    VelocityTrack { values, pixel: Pixel::new(0, 0), slow_time: UniformAxis::new(0.0, STEP, n) }
}

/// Short windows so 200-sample records hold a full slice.
pub fn small_config() -> PipelineConfig {
    PipelineConfig { t0: 0.6, tau_s: 0.2, tau_l: 0.6, tau0: 1.0, hop: 0.05, ..Default::default() }
}

/// Trapezoidal double loop over the window, written from the definition.
pub fn naive_acf(v: &[f64], c: usize, h: usize, max_lag: usize) -> Vec<f64> {
    let weight = |i: usize| if i == 0 || i == 2 * h { 0.5 } else { 1.0 };
    (0..=max_lag)
        .map(|k| {
            let (mut cross, mut e1, mut e2) = (0.0, 0.0, 0.0);
            for i in 0..=2 * h {
                let a = v[c - h + i];
                let b = v[c - h + i - k];
                cross += weight(i) * a * b;
                e1 += weight(i) * a * a;
                e2 += weight(i) * b * b;
            }
            cross / (e1 * e2).sqrt()
        })
        .collect()
}

fn geometry(cfg: &PipelineConfig) -> (usize, usize) {
    ((0.5 * cfg.t0 / STEP).round() as usize, (cfg.max_lag() / STEP).round() as usize)
}

/// `ρ(t,0) = 1` and `|ρ| ≤ 1` for the single-slice path at `c` and for
/// every hop of the batched path.
pub fn normalization(v: &[f64], c: usize, cfg: &PipelineConfig) -> Check {
    let s = short_time_acf(&track(v.to_vec()), c as f64 * STEP, cfg).map_err(|e| e.to_string())?;
    let analyzer = HopAnalyzer::new(cfg, UniformAxis::new(0.0, STEP, v.len())).map_err(|e| e.to_string())?;
    let lags = s.values.len();
    let batched = analyzer.correlations(v);
    for (row, slice) in std::iter::once(&s.values[..]).chain(batched.chunks_exact(lags)).enumerate() {
        if (slice[0] - 1.0).abs() > 1e-9 {
            return Err(format!("slice {row}: rho(0) = {}", slice[0]));
        }
        if let Some((k, r)) = slice.iter().enumerate().find(|(_, r)| !(r.abs() <= 1.0 + 1e-9)) {
            return Err(format!("slice {row}: |rho({k})| = {r}"));
        }
    }
    Ok(())
}

/// Agreement with [`naive_acf`] at centre `c` to 1e-10.
pub fn oracle(v: &[f64], c: usize, cfg: &PipelineConfig) -> Check {
    let (h, max_lag) = geometry(cfg);
    let s = short_time_acf(&track(v.to_vec()), c as f64 * STEP, cfg).map_err(|e| e.to_string())?;
    let reference = naive_acf(v, c, h, max_lag);
    for (k, (a, b)) in s.values.iter().zip(&reference).enumerate() {
        if !((a - b).abs() <= 1e-10) {
            return Err(format!("lag {k}: {a} vs {b}"));
        }
    }
    Ok(())
}

/// Reflecting the record about the midpoint of the two windows compared at
/// lag `k` swaps them, which leaves `ρ(t, τ_k)` unchanged.
pub fn time_symmetry(v: &[f64], c: usize, cfg: &PipelineConfig) -> Check {
    let (h, max_lag) = geometry(cfg);
    let t = c as f64 * STEP;
    let s = short_time_acf(&track(v.to_vec()), t, cfg).map_err(|e| e.to_string())?;
    if c + h + max_lag >= v.len() {
        return Err("record too short for reflection".into());
    }
    for k in 0..=max_lag {
        let reflected: Vec<f64> = (0..v.len())
            .map(|i| if i + k <= 2 * c { v.get(2 * c - k - i).copied().unwrap_or(0.0) } else { 0.0 })
            .collect();
        let r = short_time_acf(&track(reflected), t, cfg).map_err(|e| e.to_string())?;
        if !((r.values[k] - s.values[k]).abs() <= 1e-9) {
            return Err(format!("lag {k}: {} vs {}", r.values[k], s.values[k]));
        }
    }
    Ok(())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(1.0)
}

fn same_outcome(a: &HopOutcome, b: &HopOutcome) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => close(x.tau, y.tau) && close(x.epsilon, y.epsilon),
        (Err(x), Err(y)) => x == y,
        _ => false,
    }
}

/// Per-pixel `(τ̂_m, ε_m)` and the fused `τ̂` at every hop are unchanged when
/// every track is multiplied by `scale > 0`.
pub fn scale_invariance(tracks: &[Vec<f64>], scale: f64, cfg: &PipelineConfig) -> Check {
    let analyzer =
        HopAnalyzer::new(cfg, UniformAxis::new(0.0, STEP, tracks[0].len())).map_err(|e| e.to_string())?;
    let run = |s: f64| -> Vec<Vec<HopOutcome>> {
        tracks.iter().map(|v| analyzer.analyze_track(&v.iter().map(|x| x * s).collect::<Vec<_>>())).collect()
    };
    let (base, scaled) = (run(1.0), run(scale));
    for (m, (a, b)) in base.iter().zip(&scaled).enumerate() {
        if let Some(h) = (0..a.len()).find(|&h| !same_outcome(&a[h], &b[h])) {
            return Err(format!("pixel {m} hop {h}: {:?} vs {:?}", a[h], b[h]));
        }
    }
    for h in 0..analyzer.n_hops() {
        let fuse = |outcomes: &[Vec<HopOutcome>]| {
            let contributions = contributions_at(outcomes, h);
            (!contributions.is_empty())
                .then(|| fuse_intervals(0.0, contributions, tracks.len(), cfg.eps_th).unwrap())
        };
        match (fuse(&base), fuse(&scaled)) {
            (Some(a), Some(b)) => {
                if a.accepted != b.accepted || !close(a.fused.unwrap(), b.fused.unwrap()) {
                    return Err(format!("hop {h}: fused {:?} vs {:?}", a.fused, b.fused));
                }
            }
            (None, None) => {}
            _ => return Err(format!("hop {h}: contribution sets differ")),
        }
    }
    Ok(())
}

fn contributions_at(outcomes: &[Vec<HopOutcome>], h: usize) -> Vec<PixelContribution> {
    outcomes
        .iter()
        .enumerate()
        .filter_map(|(m, o)| {
            o[h].as_ref().ok().map(|p| PixelContribution {
                pixel: Pixel::new(m, 0),
                tau: p.tau,
                epsilon: p.epsilon,
            })
        })
        .collect()
}

pub fn contributions(pairs: &[(f64, f64)]) -> Vec<PixelContribution> {
    pairs.iter().map(|&(tau, epsilon)| PixelContribution { pixel: Pixel::new(0, 0), tau, epsilon }).collect()
}

/// The fused interval lies between the smallest and largest pixel interval.
pub fn fusion_convexity(pairs: &[(f64, f64)], region_size: usize, eps_th: f64) -> Check {
    let e = fuse_intervals(0.0, contributions(pairs), region_size, eps_th).map_err(|e| e.to_string())?;
    let lo = pairs.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = pairs.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let fused = e.fused.ok_or("no fused value")?;
    let slack = 1e-12 * hi.abs().max(1.0);
    if fused < lo - slack || fused > hi + slack {
        return Err(format!("fused {fused} outside [{lo}, {hi}]"));
    }
    if e.accepted && e.tau_hat != Some(fused) {
        return Err("accepted estimate does not report its fused value".into());
    }
    Ok(())
}

/// Lowering the threshold from `loose` to `strict` never turns a rejected
/// estimate into an accepted one.
pub fn gating_monotonicity(pairs: &[(f64, f64)], region_size: usize, loose: f64, strict: f64) -> Check {
    let a = fuse_intervals(0.0, contributions(pairs), region_size, loose).map_err(|e| e.to_string())?;
    let b = fuse_intervals(0.0, contributions(pairs), region_size, strict).map_err(|e| e.to_string())?;
    if b.accepted && !a.accepted {
        return Err(format!("accepted at {strict} but rejected at {loose}"));
    }
    if a.regate(strict).accepted != b.accepted {
        return Err("regate disagrees with a fresh fusion".into());
    }
    Ok(())
}
