mod common;

use std::f64::consts::PI;

use common::checks::{self, small_config, STEP};
use mmresp_core::eval::{correlation, rms_error, PairedSamples};
use mmresp_core::respiration::PipelineConfig;
use proptest::prelude::*;

fn record(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, len)
}

/// Breathing-like velocity: a sinusoid with a random period and phase plus
/// white noise, 12 s long.
fn breathing() -> impl Strategy<Value = Vec<f64>> {
    (1.0f64..1.6, 0.0f64..2.0 * PI, 0.0f64..1.5, record(1200)).prop_map(|(period, phase, noise, n)| {
        n.iter()
            .enumerate()
            .map(|(i, e)| (2.0 * PI * i as f64 * STEP / period + phase).sin() + noise * e)
            .collect()
    })
}

fn contributions() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.8f64..2.0, 1e-14f64..1.5), 1..40)
}

fn pairs() -> impl Strategy<Value = PairedSamples> {
    prop::collection::vec((0.5f64..2.0, 0.5f64..2.0), 3..60).prop_map(|v| PairedSamples {
        times: (0..v.len()).map(|i| 3.0 + 0.1 * i as f64).collect(),
        a: v.iter().map(|p| p.0).collect(),
        b: v.iter().map(|p| p.1).collect(),
    })
}

proptest! {
    #[test]
    fn acf_is_normalized(v in record(200), c in 130usize..170) {
        checks::normalization(&v, c, &small_config()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn acf_matches_double_loop(v in record(200), c in 130usize..170) {
        checks::oracle(&v, c, &small_config()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn acf_is_symmetric_under_reflection(v in record(320), c in 130usize..180) {
        checks::time_symmetry(&v, c, &small_config()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn fusion_is_a_convex_combination(p in contributions(), extra in 0usize..20, eps in 0.05f64..1.0) {
        checks::fusion_convexity(&p, p.len() + extra, eps).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn gating_is_monotone(p in contributions(), extra in 0usize..20, a in 0.01f64..1.0, b in 0.01f64..1.0) {
        let (loose, strict) = if a >= b { (a, b) } else { (b, a) };
        checks::gating_monotonicity(&p, p.len() + extra, loose, strict).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn rms_is_symmetric_and_shift_invariant(p in pairs(), shift in -50.0f64..50.0) {
        let swapped = PairedSamples { times: p.times.clone(), a: p.b.clone(), b: p.a.clone() };
        let shifted = PairedSamples { times: p.times.iter().map(|t| t + shift).collect(), ..p.clone() };
        let r = rms_error(&p).unwrap();
        prop_assert_eq!(r, rms_error(&swapped).unwrap());
        prop_assert_eq!(r, rms_error(&shifted).unwrap());
    }

    #[test]
    fn correlation_ignores_positive_affine_maps(p in pairs(), scale in 0.01f64..100.0, offset in -5.0f64..5.0) {
        let mapped = PairedSamples { a: p.a.iter().map(|x| scale * x + offset).collect(), ..p.clone() };
        let r = correlation(&p).unwrap();
        prop_assert!((r - correlation(&mapped).unwrap()).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn pixel_and_fused_estimates_ignore_velocity_scale(
        tracks in prop::collection::vec(breathing(), 1..4),
        scale in prop_oneof![1e-6f64..1e-3, 0.5f64..2.0, 1e2f64..1e5],
    ) {
        let cfg = PipelineConfig { hop: 0.5, ..Default::default() };
        checks::scale_invariance(&tracks, scale, &cfg).map_err(TestCaseError::fail)?;
    }
}
