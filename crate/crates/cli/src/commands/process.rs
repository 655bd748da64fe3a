use anyhow::{bail, Context, Result};
use mmresp_core::eval::{acquisition_rate, TruthSamples};
use mmresp_core::imaging::PixelImage;
use mmresp_core::io::{read_cube, write_image, write_intensity_csv, write_interval_csv, write_truth_csv};
use mmresp_core::respiration::{analyze_region, prepare_image, Method};
use mmresp_core::sim::{range_transform, RangeWindow};

use crate::args::ProcessArgs;
use crate::manifest::{create_dir, series_tag, stem, Artifact, RunManifest};

pub fn run(args: ProcessArgs) -> Result<()> {
    let cfg = args.config.load()?;
    if args.eps_th.iter().any(|e| e.is_nan() || *e <= 0.0) {
        bail!("--eps-th values must be positive");
    }
    let eps_list = if !args.eps_th.is_empty() {
        args.eps_th.clone()
    } else if args.method == Some(Method::Proposed) {
        vec![cfg.pipeline.eps_th]
    } else {
        cfg.evaluation.eps_th.clone()
    };
    let mut wanted: Vec<(Method, Option<f64>)> = Vec::new();
    if args.method != Some(Method::Proposed) {
        wanted.push((Method::Conventional, None));
    }
    if args.method != Some(Method::Conventional) {
        wanted.extend(eps_list.iter().map(|&e| (Method::Proposed, Some(e))));
    }

    let name = stem(&args.cube)?;
    let cube = read_cube(&args.cube).with_context(|| format!("reading {}", args.cube.display()))?;
    let (ground_truth, slow_time) = (cube.ground_truth.clone(), cube.slow_time);
    let img = prepare_image(range_transform(cube, RangeWindow::Hann)?, &cfg.pipeline)?;
    create_dir(&args.out)?;
    let mut manifest = RunManifest::new("process", cfg.clone(), None);
    manifest.inputs.push(args.cube.clone());
    if args.image {
        let file = format!("{name}_image.rimg");
        write_image(&args.out.join(&file), &img.to_image_sequence())?;
        manifest.artifacts.push(Artifact::new("image", file));
    }

    let analysis = analyze_region(&img, &cfg.pipeline)?;
    let (range, angle) = img.grid().position(analysis.anchor());
    eprintln!("{name}: target at {range:.2} m, {angle:.0} deg; region of {} pixels", analysis.region.len());
    if args.intensity {
        let file = format!("{name}_intensity.csv");
        write_intensity_csv(&args.out.join(&file), &analysis.intensity, Some(&analysis.region))?;
        manifest.artifacts.push(Artifact::new("intensity", file));
    }
    for (method, eps) in wanted {
        let series = match eps {
            Some(e) => analysis.proposed(e)?,
            None => analysis.conventional(),
        };
        let file = format!("{name}_{}.csv", series_tag(method, eps));
        write_interval_csv(&args.out.join(&file), &series)?;
        eprintln!("  {file}: {:.1}% of {} hops accepted", 100.0 * acquisition_rate(&series)?, series.len());
        manifest.artifacts.push(Artifact {
            method: Some(method),
            eps_th: eps,
            ..Artifact::new("intervals", file)
        });
    }
    let file = format!("{name}_truth.csv");
    write_truth_csv(&args.out.join(&file), &TruthSamples::at(&ground_truth, slow_time, &analysis.hop_times))?;
    manifest.artifacts.push(Artifact::new("truth", file));
    manifest.write(&args.out.join(format!("{name}.manifest.json")))
}
