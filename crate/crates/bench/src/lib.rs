//! Benchmarks for the pipeline stages, run through `benches/pipeline.rs`.

use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{BatchSize, Criterion};
use mmresp_core::imaging::Pixel;
use mmresp_core::respiration::{
    fuse_intervals, short_time_acf, CosineBank, HopAnalyzer, PipelineConfig, PixelContribution, VelocityTrack,
};
use mmresp_core::sim::{
    range_transform, synthesize_cube, ArrayLayout, RadarParams, RangeWindow, SceneConfig, UniformAxis,
};

const STEP: f64 = 0.01;

/// Breathing-like velocity with deterministic pseudo-random noise.
fn velocity(n: usize) -> Vec<f64> {
    let mut state = 0x2545_f491_4f6c_dd1du64;
    (0..n)
        .map(|i| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let noise = (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            (2.0 * PI * i as f64 * STEP / 1.3).sin() + 0.5 * noise
        })
        .collect()
}

fn short_run() -> (SceneConfig, RadarParams, ArrayLayout) {
    let params = RadarParams { duration: 2.0, ..Default::default() };
    let layout = ArrayLayout::mimo_3x4(params.wavelength()).unwrap();
    (SceneConfig::default(), params, layout)
}

fn simulation(c: &mut Criterion) {
    let (scene, params, layout) = short_run();
    c.bench_function("synthesize_cube/2s", |b| {
        b.iter(|| synthesize_cube(black_box(&scene), &layout, &params, 0).unwrap())
    });
    let cube = synthesize_cube(&scene, &layout, &params, 0).unwrap();
    c.bench_function("range_transform/2s", |b| {
        b.iter_batched(
            || cube.clone(),
            |cube| range_transform(cube, RangeWindow::Hann).unwrap(),
            BatchSize::LargeInput,
        )
    });
}

fn correlation(c: &mut Criterion) {
    let cfg = PipelineConfig::default();
    let v = velocity(12_000);
    let track = VelocityTrack {
        values: v.clone(),
        pixel: Pixel::new(0, 0),
        slow_time: UniformAxis::new(0.0, STEP, v.len()),
    };
    c.bench_function("short_time_acf/single", |b| {
        b.iter(|| short_time_acf(black_box(&track), 60.0, &cfg).unwrap())
    });

    let analyzer = HopAnalyzer::new(&cfg, track.slow_time).unwrap();
    let mut group = c.benchmark_group("hop_analysis");
    group.sample_size(10);
    group.bench_function("correlations/120s", |b| b.iter(|| analyzer.correlations(black_box(&v))));
    group.bench_function("analyze_track/120s", |b| b.iter(|| analyzer.analyze_track(black_box(&v))));
    group.finish();

    let rho = short_time_acf(&track, 60.0, &cfg).unwrap().values;
    let bank = CosineBank::new(&cfg, STEP);
    c.bench_function("cosine_fit/single", |b| b.iter(|| bank.fit(black_box(&rho)).unwrap()));
}

fn fusion(c: &mut Criterion) {
    let contributions: Vec<PixelContribution> = (0..85)
        .map(|i| PixelContribution {
            pixel: Pixel::new(i / 10, i % 10),
            tau: 1.2 + 0.001 * i as f64,
            epsilon: 0.05 + 0.01 * (i % 7) as f64,
        })
        .collect();
    c.bench_function("fuse_intervals/85", |b| {
        b.iter_batched(
            || contributions.clone(),
            |cs| fuse_intervals(0.0, cs, 85, 0.5).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

pub fn benchmarks(c: &mut Criterion) {
    simulation(c);
    correlation(c);
    fusion(c);
}
