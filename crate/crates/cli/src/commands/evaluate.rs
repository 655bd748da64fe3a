use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use mmresp_core::eval::{align_series, correlation, evaluate_series};
use mmresp_core::io::{format_metrics_table, read_interval_csv, read_truth_csv, write_metrics_csv};
use mmresp_core::respiration::{IntervalSeries, Method};
use mmresp_core::{MetricsReport, RunConfig};

use crate::args::EvaluateArgs;
use crate::manifest::{Artifact, RunManifest};

/// Series of one method and threshold from each radar unit, with truth.
struct Group {
    series: Vec<IntervalSeries>,
    truths: Vec<Vec<f64>>,
}

fn truth_for(path: Option<&Path>, series: &IntervalSeries) -> Result<Vec<f64>> {
    match path {
        Some(p) => Ok(read_truth_csv(p).with_context(|| format!("reading {}", p.display()))?.interval),
        None => Ok(vec![f64::NAN; series.len()]),
    }
}

fn from_csvs(args: &EvaluateArgs) -> Result<Vec<Group>> {
    if !args.truth.is_empty() && args.truth.len() != args.inputs.len() {
        bail!("got {} truth files for {} interval files", args.truth.len(), args.inputs.len());
    }
    let method = args.method.unwrap_or(Method::Proposed);
    let eps = if method == Method::Conventional { None } else { args.eps_th };
    let mut group = Group { series: Vec::new(), truths: Vec::new() };
    for (i, path) in args.inputs.iter().enumerate() {
        let s =
            read_interval_csv(path, method, eps).with_context(|| format!("reading {}", path.display()))?;
        group.truths.push(truth_for(args.truth.get(i).map(PathBuf::as_path), &s)?);
        group.series.push(s);
    }
    Ok(vec![group])
}

fn from_manifests(args: &EvaluateArgs) -> Result<Vec<Group>> {
    let manifests: Vec<(PathBuf, RunManifest)> =
        args.inputs.iter().map(|p| Ok((p.clone(), RunManifest::read(p)?))).collect::<Result<_>>()?;
    let keep = |a: &Artifact| {
        a.role == "intervals"
            && args.method.is_none_or(|m| a.method == Some(m))
            && args.eps_th.is_none_or(|e| a.eps_th == Some(e))
    };
    let (first_path, first) = &manifests[0];
    let labels: Vec<&Artifact> = first.artifacts.iter().filter(|a| keep(a)).collect();
    if labels.is_empty() {
        bail!("{} lists no matching interval series", first_path.display());
    }
    labels
        .into_iter()
        .map(|label| {
            let method = label.method.context("interval artifact without a method")?;
            let mut group = Group { series: Vec::new(), truths: Vec::new() };
            for (path, m) in &manifests {
                let a = m
                    .artifacts
                    .iter()
                    .find(|a| a.role == "intervals" && a.method == label.method && a.eps_th == label.eps_th)
                    .with_context(|| format!("{} has no {} series", path.display(), label.path.display()))?;
                let file = RunManifest::resolve(path, a);
                let s = read_interval_csv(&file, method, a.eps_th)
                    .with_context(|| format!("reading {}", file.display()))?;
                let truth =
                    m.artifacts.iter().find(|a| a.role == "truth").map(|a| RunManifest::resolve(path, a));
                group.truths.push(truth_for(truth.as_deref(), &s)?);
                group.series.push(s);
            }
            Ok(group)
        })
        .collect()
}

fn warn_undefined(report: &MetricsReport, group: &Group) {
    let [a, b] = match group.series.as_slice() {
        [a, b] => [a, b],
        _ => return,
    };
    match align_series(a, b) {
        Err(e) => eprintln!("warning: {}: {e}", report.label()),
        Ok(pairs) => {
            if let Err(e) = correlation(&pairs) {
                eprintln!("warning: {}: {e}", report.label());
            }
        }
    }
}

pub fn run(args: EvaluateArgs) -> Result<()> {
    let manifests = args.inputs.iter().all(|p| p.extension().is_some_and(|e| e == "json"));
    let groups = if manifests { from_manifests(&args)? } else { from_csvs(&args)? };
    let mut reports = Vec::new();
    for g in &groups {
        let mut r = evaluate_series(&g.series, &g.truths)?;
        // Interval files keep only accepted values, so the ungated variant
        // cannot be recovered from them.
        r.rms_inter_radar_ungated = None;
        warn_undefined(&r, g);
        reports.push(r);
    }
    write_metrics_csv(&args.out, &reports).with_context(|| format!("writing {}", args.out.display()))?;
    print!("{}", format_metrics_table(&reports));

    let config = match manifests {
        true => RunManifest::read(&args.inputs[0])?.config,
        false => RunConfig::default(),
    };
    let mut manifest = RunManifest::new("evaluate", config, None);
    manifest.inputs = args.inputs.clone();
    let name = args.out.file_name().context("--out must name a file")?;
    manifest.artifacts.push(Artifact::new("metrics", name));
    manifest.write(&args.out.with_extension("manifest.json"))
}
