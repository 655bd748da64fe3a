mod common;

use std::fs;

use common::{params, still_scene};
use mmresp_core::imaging::ImageSequence;
use mmresp_core::io::{
    format_interval_csv, read_cube, read_image, read_interval_csv, write_cube, write_image,
    write_interval_csv, INTERVAL_HEADER,
};
use mmresp_core::respiration::{IntervalEstimate, IntervalSeries, Method, PipelineConfig};
use mmresp_core::sim::{synthesize_cube, ArrayLayout, DataCube};
use mmresp_core::{Error, PolarGrid};
use num_complex::Complex64;

fn small_cube() -> DataCube {
    let p = params(0.5);
    let layout = ArrayLayout::mimo_3x4(p.wavelength()).unwrap();
    synthesize_cube(&still_scene(1.25, 1.0), &layout, &p, 0).unwrap()
}

#[test]
fn cube_round_trip_keeps_everything_but_sample_precision() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.rcub");
    let cube = small_cube();
    write_cube(&path, &cube).unwrap();
    let back = read_cube(&path).unwrap();
    assert_eq!(back.params, cube.params);
    assert_eq!(back.layout, cube.layout);
    assert_eq!(back.slow_time, cube.slow_time);
    assert_eq!(back.fast_time, cube.fast_time);
    assert_eq!(back.ground_truth.motion_active, cube.ground_truth.motion_active);
    assert_eq!(back.ground_truth.interval, cube.ground_truth.interval);
    for (a, b) in back.samples.iter().zip(&cube.samples) {
        assert!((a - b).norm() <= 1e-6 * b.norm().max(1.0));
    }
}

#[test]
fn writing_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    write_cube(&a, &small_cube()).unwrap();
    write_cube(&b, &small_cube()).unwrap();
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn truncated_and_foreign_files_are_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.rcub");
    write_cube(&path, &small_cube()).unwrap();
    let bytes = fs::read(&path).unwrap();
    fs::write(&path, &bytes[..bytes.len() - 100]).unwrap();
    assert!(matches!(read_cube(&path), Err(Error::CorruptFile(_))));
    fs::write(&path, b"not a cube at all").unwrap();
    assert!(matches!(read_cube(&path), Err(Error::CorruptFile(_))));
    let mut extra = bytes.clone();
    extra.push(0);
    fs::write(&path, extra).unwrap();
    assert!(matches!(read_cube(&path), Err(Error::CorruptFile(_))));
    assert!(matches!(read_cube(&dir.path().join("missing")), Err(Error::Io(_))));
}

#[test]
fn image_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.rimg");
    let grid = PolarGrid::new(vec![5.0, 5.5], vec![60.0, 90.0, 120.0]).unwrap();
    let values = (0..4 * 6).map(|i| Complex64::new(i as f64, -0.5 * i as f64)).collect();
    let img = ImageSequence {
        values,
        grid,
        slow_time: mmresp_core::sim::UniformAxis::new(0.0, 0.01, 4),
        wavelength: 3.8e-3,
        clutter_removed: true,
    };
    write_image(&path, &img).unwrap();
    assert_eq!(read_image(&path).unwrap(), img);
    assert!(matches!(read_cube(&path), Err(Error::CorruptFile(_))));
}

fn series() -> IntervalSeries {
    let mut a = IntervalEstimate::empty(3.0, 40);
    a.tau_hat = Some(1.234567);
    a.fused = a.tau_hat;
    a.accepted = true;
    a.weight_sum = 123.5;
    let mut b = IntervalEstimate::empty(3.1, 40);
    b.fused = Some(1.5);
    b.weight_sum = 12.0;
    IntervalSeries { method: Method::Proposed, eps_th: Some(0.5), estimates: vec![a, b] }
}

#[test]
fn interval_csv_layout() {
    let text = format_interval_csv(&series());
    assert_eq!(text, format!("{INTERVAL_HEADER}\n3.000,1.234567,1,123.5,40\n3.100,,0,12,40\n"));
}

#[test]
fn interval_csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    write_interval_csv(&path, &series()).unwrap();
    let back = read_interval_csv(&path, Method::Proposed, Some(0.5)).unwrap();
    assert_eq!(back.len(), 2);
    assert_eq!(back.estimates[0].tau_hat, Some(1.234567));
    assert!(!back.estimates[1].accepted);
    assert_eq!(back.estimates[1].region_size, 40);
    fs::write(&path, "time_s,tau\n1,2\n").unwrap();
    assert!(read_interval_csv(&path, Method::Proposed, None).is_err());
    fs::write(&path, format!("{INTERVAL_HEADER}\n3.0,,1,1,1\n")).unwrap();
    assert!(read_interval_csv(&path, Method::Proposed, None).is_err());
}

#[test]
fn default_pipeline_config_round_trips_as_toml_section() {
    let cfg = PipelineConfig::default();
    let text = toml::to_string(&cfg).unwrap();
    assert!(text.contains("T0 = 2.0") && text.contains("tau_S = 0.8"));
    assert_eq!(toml::from_str::<PipelineConfig>(&text).unwrap(), cfg);
}

#[test]
fn truth_csv_round_trip_keeps_missing_intervals() {
    use mmresp_core::eval::TruthSamples;
    use mmresp_core::io::{read_truth_csv, write_truth_csv};
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let truth = TruthSamples {
        times: vec![3.0, 3.1],
        interval: vec![1.25, f64::NAN],
        motion_active: vec![false, true],
    };
    write_truth_csv(&path, &truth).unwrap();
    assert_eq!(
        fs::read_to_string(&path).unwrap(),
        "time_s,tau_true_s,motion_active\n3.000,1.250000,0\n3.100,,1\n"
    );
    let back = read_truth_csv(&path).unwrap();
    assert_eq!(back.times, truth.times);
    assert_eq!(back.interval[0], 1.25);
    assert!(back.interval[1].is_nan());
    assert_eq!(back.motion_active, truth.motion_active);
}
