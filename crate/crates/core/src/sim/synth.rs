use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::motion::{derive_seed, sample_motion};
use super::scene::polar_to_xy;
use super::{ArrayLayout, RadarParams, SceneConfig, UniformAxis};
use crate::error::{Error, Result};
use crate::SPEED_OF_LIGHT;

const RESPIRATION_STREAM: u64 = 1;
const BODY_MOTION_STREAM: u64 = 2;
const NOISE_STREAM_BASE: u64 = 100;

/// Simulator truth carried alongside the samples.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    /// Instantaneous respiratory interval per slow-time sample (NaN when
    /// the scene has no respiration).
    pub interval: Vec<f64>,
    pub motion_active: Vec<bool>,
}

/// Dechirped beat samples indexed `[slow][fast][channel]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DataCube {
    pub samples: Vec<Complex64>,
    pub slow_time: UniformAxis,
    pub fast_time: UniformAxis,
    pub layout: ArrayLayout,
    pub params: RadarParams,
    pub ground_truth: GroundTruth,
}

impl DataCube {
    pub fn n_slow(&self) -> usize {
        self.slow_time.len
    }

    pub fn n_fast(&self) -> usize {
        self.fast_time.len
    }

    pub fn n_channels(&self) -> usize {
        self.layout.len()
    }

    #[inline]
    pub fn index(&self, slow: usize, fast: usize, channel: usize) -> usize {
        (slow * self.n_fast() + fast) * self.n_channels() + channel
    }

    pub fn validate(&self) -> Result<()> {
        let expected = self.n_slow() * self.n_fast() * self.n_channels();
        if self.samples.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "{} samples for dims {}x{}x{}",
                self.samples.len(),
                self.n_slow(),
                self.n_fast(),
                self.n_channels()
            )));
        }
        if self.ground_truth.interval.len() != self.n_slow()
            || self.ground_truth.motion_active.len() != self.n_slow()
        {
            return Err(Error::DimensionMismatch("ground truth is not sampled on the slow-time axis".into()));
        }
        Ok(())
    }
}

struct Emitter {
    position: [f64; 2],
    amplitude: f64,
}

/// Synthesizes the beat signal seen by radar unit `radar_index` of the
/// scene. Every unit shares the same target motion; noise is drawn from a
/// per-unit stream.
pub fn synthesize_cube(
    scene: &SceneConfig,
    layout: &ArrayLayout,
    params: &RadarParams,
    radar_index: usize,
) -> Result<DataCube> {
    scene.validate()?;
    params.validate()?;
    let radar = *scene.radar_positions.get(radar_index).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "radar index {radar_index} out of range ({} units)",
            scene.radar_positions.len()
        ))
    })?;

    let n_slow = params.slow_time_samples();
    let n_fast = params.fast_time_samples;
    let k_count = layout.len();
    let slow_time = UniformAxis::new(0.0, 1.0 / params.slow_time_rate, n_slow);
    let fast_step = params.fast_time_step();
    let fast_time = UniformAxis::new(-0.5 * (n_fast as f64 - 1.0) * fast_step, fast_step, n_fast);

    let respiration =
        sample_motion(&scene.respiration, &slow_time, derive_seed(scene.seed, RESPIRATION_STREAM));
    let body = sample_motion(&scene.body_motion, &slow_time, derive_seed(scene.seed, BODY_MOTION_STREAM));

    let wavelength = params.wavelength();
    let max_range = params.max_unambiguous_range();
    let beat_per_meter = params.slope() * 2.0 / SPEED_OF_LIGHT;
    let centres: Vec<[f64; 2]> =
        layout.virtual_positions.iter().map(|&x| [radar[0] + 0.5 * x, radar[1]]).collect();

    // Adds one point reflector's chirp for every channel into `frame`
    // (laid out [fast][channel]).
    let add_emitter = |frame: &mut [Complex64], e: &Emitter| -> Result<()> {
        for (k, c) in centres.iter().enumerate() {
            let r = (e.position[0] - c[0]).hypot(e.position[1] - c[1]);
            if r > max_range {
                return Err(Error::TargetOutOfUnambiguousRange { range: r, max_range });
            }
            let beat = beat_per_meter * r;
            let phase0 = -4.0 * PI * r / wavelength + 2.0 * PI * beat * fast_time.start;
            let mut z = Complex64::from_polar(e.amplitude, phase0);
            let rot = Complex64::from_polar(1.0, 2.0 * PI * beat * fast_step);
            for f in 0..n_fast {
                frame[f * k_count + k] += z;
                z *= rot;
            }
        }
        Ok(())
    };

    let frame_len = n_fast * k_count;
    let mut clutter_frame = vec![Complex64::new(0.0, 0.0); frame_len];
    for c in &scene.clutter_scatterers {
        let e = Emitter { position: polar_to_xy(c.range, c.angle), amplitude: c.amplitude };
        add_emitter(&mut clutter_frame, &e)?;
    }

    let rest = scene.target_position();
    let norm = rest[0].hypot(rest[1]);
    let radial = [rest[0] / norm, rest[1] / norm];
    let lateral = [-radial[1], radial[0]];

    let mut samples = vec![Complex64::new(0.0, 0.0); n_slow * frame_len];
    let mut target_frame = vec![Complex64::new(0.0, 0.0); frame_len];
    for (n, frame) in samples.chunks_exact_mut(frame_len).enumerate() {
        // Positive displacement moves the target toward the origin.
        let toward = respiration.displacement[n] + body.displacement[n];
        let side = body.lateral[n];
        let target = Emitter {
            position: [
                rest[0] - toward * radial[0] + side * lateral[0],
                rest[1] - toward * radial[1] + side * lateral[1],
            ],
            amplitude: scene.target_rcs_amplitude,
        };
        target_frame.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        add_emitter(&mut target_frame, &target)?;
        for ((out, t), c) in frame.iter_mut().zip(&target_frame).zip(&clutter_frame) {
            *out = *t + *c;
        }
    }

    if scene.noise_std > 0.0 {
        let mut rng =
            ChaCha8Rng::seed_from_u64(derive_seed(scene.seed, NOISE_STREAM_BASE + radar_index as u64));
        let sigma = scene.noise_std / std::f64::consts::SQRT_2;
        for z in samples.iter_mut() {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            *z += Complex64::new(sigma * re, sigma * im);
        }
    }

    let interval = respiration.interval.unwrap_or_else(|| vec![f64::NAN; n_slow]);
    Ok(DataCube {
        samples,
        slow_time,
        fast_time,
        layout: layout.clone(),
        params: params.clone(),
        ground_truth: GroundTruth { interval, motion_active: body.active },
    })
}
