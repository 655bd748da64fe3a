//! Ground-truth displacement generators: drifting-interval respiration and
//! randomly timed posture changes.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, StandardNormal};

use super::scene::{MotionKind, MotionModel};
use super::UniformAxis;

/// Spacing of the random-walk knots that drive the respiratory interval.
const INTERVAL_KNOT_SPACING: f64 = 5.0;
/// Knot-to-knot step of the interval random walk, as a fraction of the
/// allowed drift.
const INTERVAL_STEP_FRACTION: f64 = 0.15;
/// Largest fidget superimposed on a posture change, relative to
/// `burst_amplitude`.
const BURST_WOBBLE_FRACTION: f64 = 0.1;
/// Range of fidget periods, s. Faster than any breathing interval and slow
/// enough that a 3 cm burst stays under the phase-unwrapping speed limit.
const BURST_WOBBLE_PERIOD: (f64, f64) = (0.25, 0.6);

/// One body-motion event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BurstEvent {
    pub start: f64,
    pub duration: f64,
}

impl BurstEvent {
    pub fn contains(&self, t: f64) -> bool {
        t >= self.start && t <= self.start + self.duration
    }
}

/// Sampled output of a [`MotionModel`].
#[derive(Debug, Clone, PartialEq)]
pub struct MotionTrack {
    /// Motion toward the radar along the scene's radial direction, m.
    pub displacement: Vec<f64>,
    /// In-plane motion perpendicular to the radial direction, m.
    pub lateral: Vec<f64>,
    /// Instantaneous respiratory interval; only for respiration models.
    pub interval: Option<Vec<f64>>,
    /// True while a burst is in progress.
    pub active: Vec<bool>,
    pub events: Vec<BurstEvent>,
}

impl MotionTrack {
    fn still(n: usize) -> Self {
        Self {
            displacement: vec![0.0; n],
            lateral: vec![0.0; n],
            interval: None,
            active: vec![false; n],
            events: Vec::new(),
        }
    }
}

/// SplitMix64 finaliser; derives independent sub-seeds from one top-level
/// seed.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn sample_motion(model: &MotionModel, axis: &UniformAxis, seed: u64) -> MotionTrack {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model.kind {
        MotionKind::None => MotionTrack::still(axis.len),
        MotionKind::QuasiperiodicRespiration => respiration(model, axis, &mut rng),
        MotionKind::TransientBursts => bursts(model, axis, &mut rng),
    }
}

fn smooth_step(u: f64) -> f64 {
    let u = u.clamp(0.0, 1.0);
    0.5 * (1.0 - (PI * u).cos())
}

fn respiration(model: &MotionModel, axis: &UniformAxis, rng: &mut ChaCha8Rng) -> MotionTrack {
    let n = axis.len;
    let drift = model.interval_drift;
    let interval: Vec<f64> = if drift == 0.0 {
        vec![model.base_interval; n]
    } else {
        let span = axis.step * n.saturating_sub(1) as f64;
        let n_knots = (span / INTERVAL_KNOT_SPACING).ceil() as usize + 2;
        let sigma = INTERVAL_STEP_FRACTION * drift;
        let mut knots = Vec::with_capacity(n_knots);
        let mut dev = 0.0f64;
        knots.push(dev);
        for _ in 1..n_knots {
            let step: f64 = rng.sample(StandardNormal);
            dev = (dev + sigma * step).clamp(-drift, drift);
            knots.push(dev);
        }
        (0..n)
            .map(|i| {
                let pos = (axis.value(i) - axis.start) / INTERVAL_KNOT_SPACING;
                let j = (pos.floor() as usize).min(n_knots - 2);
                let u = pos - j as f64;
                let dev = knots[j] + (knots[j + 1] - knots[j]) * smooth_step(u);
                model.base_interval * (1.0 + dev)
            })
            .collect()
    };

    // Cycle count is the running integral of the instantaneous rate.
    let mut displacement = Vec::with_capacity(n);
    let mut cycles = (axis.start) / interval.first().copied().unwrap_or(1.0);
    for i in 0..n {
        if i > 0 {
            cycles += 0.5 * axis.step * (1.0 / interval[i - 1] + 1.0 / interval[i]);
        }
        displacement.push(model.amplitude * (2.0 * PI * cycles).sin());
    }

    MotionTrack {
        displacement,
        lateral: vec![0.0; n],
        interval: Some(interval),
        active: vec![false; n],
        events: Vec::new(),
    }
}

struct Posture {
    event: BurstEvent,
    /// Posture change (radial, lateral).
    delta: [f64; 2],
    wobble: [(f64, f64, f64); 2],
}

fn bursts(model: &MotionModel, axis: &UniformAxis, rng: &mut ChaCha8Rng) -> MotionTrack {
    let n = axis.len;
    let mut track = MotionTrack::still(n);
    if model.burst_rate <= 0.0 || n == 0 {
        return track;
    }
    let end = axis.value(n - 1);
    let gaps = Exp::new(model.burst_rate).expect("positive rate");

    let mut postures = Vec::new();
    let mut current = [0.0f64; 2];
    let mut t = axis.start;
    loop {
        t += gaps.sample(rng);
        if t >= end {
            break;
        }
        let event = BurstEvent { start: t, duration: model.burst_duration };
        let heading = rng.random_range(0.0..2.0 * PI);
        let reach = model.burst_amplitude * rng.random_range(0.3..1.0);
        let target = [reach * heading.cos(), reach * heading.sin()];
        let delta = [target[0] - current[0], target[1] - current[1]];
        current = target;
        let mut wobble = [(0.0, 0.0, 0.0); 2];
        for w in &mut wobble {
            *w = (
                BURST_WOBBLE_FRACTION * model.burst_amplitude * rng.random_range(0.0..1.0),
                model.burst_duration / rng.random_range(BURST_WOBBLE_PERIOD.0..BURST_WOBBLE_PERIOD.1),
                rng.random_range(0.0..2.0 * PI),
            );
        }
        postures.push(Posture { event, delta, wobble });
    }

    for (i, (radial, lateral)) in track.displacement.iter_mut().zip(track.lateral.iter_mut()).enumerate() {
        let ti = axis.value(i);
        let mut offset = [0.0f64; 2];
        for p in &postures {
            if ti < p.event.start {
                break;
            }
            let u = (ti - p.event.start) / p.event.duration;
            let s = smooth_step(u);
            for (a, off) in offset.iter_mut().enumerate() {
                *off += p.delta[a] * s;
                if u <= 1.0 {
                    let (amp, cycles, phase) = p.wobble[a];
                    *off += amp * (PI * u).sin().powi(2) * (2.0 * PI * cycles * u + phase).sin();
                }
            }
        }
        *radial = offset[0];
        *lateral = offset[1];
    }
    for (i, flag) in track.active.iter_mut().enumerate() {
        let ti = axis.value(i);
        *flag = postures.iter().any(|p| p.event.contains(ti));
    }
    track.events = postures.into_iter().map(|p| p.event).collect();
    track
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis(duration: f64, rate: f64) -> UniformAxis {
        UniformAxis::new(0.0, 1.0 / rate, (duration * rate).round() as usize)
    }

    #[test]
    fn none_is_still() {
        let track = sample_motion(&MotionModel::none(), &axis(10.0, 100.0), 3);
        assert!(track.displacement.iter().all(|&d| d == 0.0));
        assert!(track.active.iter().all(|&a| !a));
        assert!(track.interval.is_none());
    }

    #[test]
    fn constant_interval_respiration_is_a_sinusoid() {
        let ax = axis(120.0, 100.0);
        let model = MotionModel::respiration(2e-3, 1.25, 0.0);
        let track = sample_motion(&model, &ax, 9);
        let interval = track.interval.unwrap();
        assert!(interval.iter().all(|&tau| tau == 1.25));
        for (i, d) in track.displacement.iter().enumerate() {
            let expected = 2e-3 * (2.0 * PI * ax.value(i) / 1.25).sin();
            assert!((d - expected).abs() < 1e-12, "sample {i}: {d} vs {expected}");
        }
    }

    #[test]
    fn drifting_interval_stays_within_bounds_and_is_smooth() {
        let ax = axis(120.0, 100.0);
        let model = MotionModel::respiration(1e-3, 1.3, 0.23);
        for seed in 0..20 {
            let interval = sample_motion(&model, &ax, seed).interval.unwrap();
            for w in interval.windows(2) {
                assert!((w[1] - w[0]).abs() < 1e-3);
            }
            let (lo, hi) = interval.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &t| (lo.min(t), hi.max(t)));
            assert!(lo >= 1.3 * 0.77 - 1e-12 && hi <= 1.3 * 1.23 + 1e-12);
        }
    }

    #[test]
    fn mask_matches_burst_supports() {
        let ax = axis(120.0, 100.0);
        let model = MotionModel::bursts(1.0 / 15.0, 1.0, 0.03);
        let track = sample_motion(&model, &ax, 11);
        for (i, &flag) in track.active.iter().enumerate() {
            let t = ax.value(i);
            assert_eq!(flag, track.events.iter().any(|e| e.contains(t)));
        }
        // Outside every support the posture is frozen.
        for i in 1..ax.len {
            if !track.active[i] && !track.active[i - 1] {
                assert_eq!(track.displacement[i], track.displacement[i - 1]);
            }
        }
    }

    #[test]
    fn burst_count_follows_poisson_expectation() {
        // 120 s at 1/15 events/s: mean 8, variance 8. Over 400 seeds the
        // sample mean has standard error sqrt(8/400) ~ 0.14.
        let ax = axis(120.0, 100.0);
        let model = MotionModel::bursts(1.0 / 15.0, 1.0, 0.03);
        let counts: Vec<f64> = (0..400).map(|s| sample_motion(&model, &ax, s).events.len() as f64).collect();
        let mean = counts.iter().sum::<f64>() / counts.len() as f64;
        let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (counts.len() - 1) as f64;
        let expected = 120.0 / 15.0 * (ax.value(ax.len - 1) / 120.0);
        assert!((mean - expected).abs() < 0.5, "mean {mean}");
        assert!((var / expected - 1.0).abs() < 0.3, "variance {var}");
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let ax = axis(60.0, 100.0);
        let model = MotionModel::bursts(0.2, 0.8, 0.02);
        assert_eq!(sample_motion(&model, &ax, 5), sample_motion(&model, &ax, 5));
        assert_ne!(sample_motion(&model, &ax, 5), sample_motion(&model, &ax, 6));
    }
}
