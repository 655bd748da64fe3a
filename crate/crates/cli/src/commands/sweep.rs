use std::fmt::Write as _;
use std::fs;

use anyhow::{bail, Result};
use mmresp_core::eval::compare_methods;
use mmresp_core::io::{format_metrics_csv, METRICS_HEADER};
use mmresp_core::respiration::{Method, PipelineConfig};
use mmresp_core::sim::SceneConfig;
use mmresp_core::MetricsReport;

use crate::args::SweepArgs;
use crate::manifest::{create_dir, Artifact, RunManifest};

/// Outcome of one method and threshold at one grid point and seed.
struct Row {
    tau0: f64,
    method: Method,
    eps_th: Option<f64>,
    report: Result<MetricsReport, String>,
}

fn clean(msg: &str) -> String {
    msg.replace([',', '\n', '\r'], ";")
}

fn mean_std(values: &[f64]) -> (String, String) {
    let n = values.len();
    if n == 0 {
        return (String::new(), String::new());
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let std =
        (n > 1).then(|| (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt());
    (format!("{mean:.6}"), std.map(|s| format!("{s:.6}")).unwrap_or_default())
}

fn summary(rows: &[Row], taus: &[f64], labels: &[(Method, Option<f64>)]) -> String {
    let mut out = String::from("tau0,method,eps_th,n_ok,n_failed");
    for m in ["rms_inter_radar", "correlation", "acquisition_rate", "rms_vs_truth"] {
        let _ = write!(out, ",{m}_mean,{m}_std");
    }
    out.push('\n');
    for &tau0 in taus {
        for &(method, eps) in labels {
            let point: Vec<&Row> =
                rows.iter().filter(|r| r.tau0 == tau0 && r.method == method && r.eps_th == eps).collect();
            let ok: Vec<&MetricsReport> = point.iter().filter_map(|r| r.report.as_ref().ok()).collect();
            let _ = write!(
                out,
                "{tau0},{method},{},{},{}",
                eps.map(|e| e.to_string()).unwrap_or_default(),
                ok.len(),
                point.len() - ok.len()
            );
            let columns: [fn(&MetricsReport) -> Option<f64>; 4] =
                [|r| r.rms_inter_radar, |r| r.correlation, |r| Some(r.acquisition_rate), |r| r.rms_vs_truth];
            for f in columns {
                let values: Vec<f64> = ok.iter().filter_map(|r| f(r)).collect();
                let (m, s) = mean_std(&values);
                let _ = write!(out, ",{m},{s}");
            }
            out.push('\n');
        }
    }
    out
}

pub fn run(args: SweepArgs) -> Result<()> {
    let mut cfg = args.config.load()?;
    if !args.eps_th.is_empty() {
        cfg.sweep.eps_th = args.eps_th.clone();
    }
    if let Some(seed) = args.seed {
        cfg.sweep.seeds = vec![seed];
    }
    cfg.validate()?;
    let layout = cfg.layout()?;
    let grid = cfg.sweep.clone();
    let labels: Vec<(Method, Option<f64>)> = std::iter::once((Method::Conventional, None))
        .chain(grid.eps_th.iter().map(|&e| (Method::Proposed, Some(e))))
        .collect();

    let mut rows = String::from("tau0,seed,status,");
    rows.push_str(METRICS_HEADER);
    rows.push_str(",error\n");
    let mut all = Vec::new();
    for &tau0 in &grid.tau0 {
        let pipeline = PipelineConfig { tau0, ..cfg.pipeline.clone() };
        for &seed in &grid.seeds {
            let scene = SceneConfig { seed, ..cfg.scene.clone() };
            let result = compare_methods(&scene, &cfg.radar, &layout, &pipeline, &grid.eps_th);
            match &result {
                Ok(_) => eprintln!("tau0 = {tau0}, seed {seed}: ok"),
                Err(e) => eprintln!("tau0 = {tau0}, seed {seed}: failed: {e}"),
            }
            for (i, &(method, eps)) in labels.iter().enumerate() {
                let report = match &result {
                    Ok(c) => Ok(c.reports[i].clone()),
                    Err(e) => Err(e.to_string()),
                };
                match &report {
                    Ok(r) => {
                        let line = format_metrics_csv(std::slice::from_ref(r));
                        let body = line.lines().nth(1).unwrap_or_default();
                        let _ = writeln!(rows, "{tau0},{seed},ok,{body},");
                    }
                    Err(e) => {
                        let eps = eps.map(|e| e.to_string()).unwrap_or_default();
                        let _ = writeln!(rows, "{tau0},{seed},failed,{method},{eps},,,,,,,{}", clean(e));
                    }
                }
                all.push(Row { tau0, method, eps_th: eps, report });
            }
        }
    }

    create_dir(&args.out)?;
    fs::write(args.out.join("sweep.csv"), rows)?;
    let table = summary(&all, &grid.tau0, &labels);
    fs::write(args.out.join("summary.csv"), &table)?;
    print!("{table}");
    let mut manifest = RunManifest::new("sweep", cfg, None);
    manifest.artifacts.push(Artifact::new("sweep", "sweep.csv"));
    manifest.artifacts.push(Artifact::new("summary", "summary.csv"));
    manifest.write(&args.out.join("manifest.json"))?;
    if all.iter().all(|r| r.report.is_err()) {
        bail!("every grid point failed");
    }
    Ok(())
}
