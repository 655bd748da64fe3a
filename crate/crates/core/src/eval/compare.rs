use serde::{Deserialize, Serialize};

use super::metrics::{acquisition_rate, align_series, align_ungated, correlation, rms_error, truth_errors};
use crate::error::{Error, Result};
use crate::respiration::{analyze_cube, IntervalSeries, Method, PipelineConfig, RegionAnalysis};
use crate::sim::{synthesize_cube, ArrayLayout, GroundTruth, RadarParams, SceneConfig, UniformAxis};

/// Metrics of one method at one threshold over all radar units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub method: Method,
    /// `None` for the ungated baseline.
    pub eps_th: Option<f64>,
    /// Over mutually accepted hops; absent with a single radar or no overlap.
    pub rms_inter_radar: Option<f64>,
    /// Over every hop where both units produced a fused value, ignoring the
    /// acceptance rule.
    pub rms_inter_radar_ungated: Option<f64>,
    pub correlation: Option<f64>,
    /// Mean of the per-unit acquisition rates.
    pub acquisition_rate: f64,
    /// Pooled over each unit's own accepted hops.
    pub rms_vs_truth: Option<f64>,
    /// Number of mutually accepted hops.
    pub n_common: usize,
}

impl MetricsReport {
    pub fn label(&self) -> String {
        match self.eps_th {
            Some(e) => format!("{}({e})", self.method),
            None => self.method.to_string(),
        }
    }
}

/// Processed output of one radar unit.
#[derive(Debug, Clone)]
pub struct RadarRun {
    pub radar_index: usize,
    pub analysis: RegionAnalysis,
    /// True interval at every hop time (`NaN` without respiration).
    pub truth: Vec<f64>,
    /// Whether body motion was active at every hop time.
    pub motion_active: Vec<bool>,
}

/// Simulator truth sampled at estimate times.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TruthSamples {
    pub times: Vec<f64>,
    /// `NaN` where the scene has no respiration.
    pub interval: Vec<f64>,
    pub motion_active: Vec<bool>,
}

impl TruthSamples {
    /// Nearest-sample lookup of the cube truth at each of `times`.
    pub fn at(truth: &GroundTruth, slow_time: UniformAxis, times: &[f64]) -> Self {
        let at = |t: f64| slow_time.nearest(t);
        Self {
            times: times.to_vec(),
            interval: times.iter().map(|&t| truth.interval[at(t)]).collect(),
            motion_active: times.iter().map(|&t| truth.motion_active[at(t)]).collect(),
        }
    }
}

/// Simulates one radar unit and runs imaging and per-pixel analysis.
pub fn run_radar(
    scene: &SceneConfig,
    params: &RadarParams,
    layout: &ArrayLayout,
    cfg: &PipelineConfig,
    radar_index: usize,
) -> Result<RadarRun> {
    let cube = synthesize_cube(scene, layout, params, radar_index)?;
    let truth_full = cube.ground_truth.clone();
    let slow_time = cube.slow_time;
    let analysis = analyze_cube(cube, cfg)?;
    let truth = TruthSamples::at(&truth_full, slow_time, &analysis.hop_times);
    Ok(RadarRun { radar_index, truth: truth.interval, motion_active: truth.motion_active, analysis })
}

/// Metrics for one or two series of the same method and threshold.
/// `truths[i]` holds the true interval at the hops of `series[i]`.
pub fn evaluate_series(series: &[IntervalSeries], truths: &[Vec<f64>]) -> Result<MetricsReport> {
    let (first, rest) =
        series.split_first().ok_or_else(|| Error::InvalidParameter("no series to evaluate".into()))?;
    if series.len() > 2 || truths.len() != series.len() {
        return Err(Error::InvalidParameter(format!(
            "need one or two series with matching truth, got {} and {}",
            series.len(),
            truths.len()
        )));
    }
    let mut rate = 0.0;
    let mut squared = Vec::new();
    for (s, t) in series.iter().zip(truths) {
        rate += acquisition_rate(s)?;
        squared.extend(truth_errors(s, t)?);
    }
    let rms_vs_truth =
        (!squared.is_empty()).then(|| (squared.iter().sum::<f64>() / squared.len() as f64).sqrt());
    let mut report = MetricsReport {
        method: first.method,
        eps_th: first.eps_th,
        rms_inter_radar: None,
        rms_inter_radar_ungated: None,
        correlation: None,
        acquisition_rate: rate / series.len() as f64,
        rms_vs_truth,
        n_common: 0,
    };
    if let Some(second) = rest.first() {
        match align_series(first, second) {
            Ok(pairs) => {
                report.n_common = pairs.len();
                report.rms_inter_radar = Some(rms_error(&pairs)?);
                report.correlation = correlation(&pairs).ok();
            }
            Err(Error::NoOverlap { .. }) => {}
            Err(e) => return Err(e),
        }
        match align_ungated(first, second) {
            Ok(pairs) => report.rms_inter_radar_ungated = Some(rms_error(&pairs)?),
            Err(Error::NoOverlap { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Conventional report followed by one proposed report per threshold.
pub fn evaluate_runs(runs: &[RadarRun], eps_list: &[f64]) -> Result<Vec<MetricsReport>> {
    let truths: Vec<Vec<f64>> = runs.iter().map(|r| r.truth.clone()).collect();
    let conventional: Vec<IntervalSeries> = runs.iter().map(|r| r.analysis.conventional()).collect();
    let mut reports = vec![evaluate_series(&conventional, &truths)?];
    for &eps in eps_list {
        let proposed = runs.iter().map(|r| r.analysis.proposed(eps)).collect::<Result<Vec<_>>>()?;
        reports.push(evaluate_series(&proposed, &truths)?);
    }
    Ok(reports)
}

/// Per-unit runs and the reports derived from them.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub runs: Vec<RadarRun>,
    pub reports: Vec<MetricsReport>,
}

/// Simulates and processes every radar unit of `scene`, then evaluates the
/// conventional method and the proposed method at each threshold.
pub fn compare_methods(
    scene: &SceneConfig,
    params: &RadarParams,
    layout: &ArrayLayout,
    cfg: &PipelineConfig,
    eps_list: &[f64],
) -> Result<Comparison> {
    scene.validate()?;
    if eps_list.iter().any(|e| !(*e > 0.0)) {
        return Err(Error::InvalidParameter("thresholds must be positive".into()));
    }
    // Units run one after another; each one's processing is parallel inside
    // and a full-length cube is large.
    let runs = (0..scene.radar_positions.len())
        .map(|i| run_radar(scene, params, layout, cfg, i))
        .collect::<Result<Vec<_>>>()?;
    let reports = evaluate_runs(&runs, eps_list)?;
    Ok(Comparison { runs, reports })
}
