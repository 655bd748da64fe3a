#![allow(dead_code, clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod imaging;

use mmresp_core::sim::{MotionModel, RadarParams, SceneConfig};

pub fn params(duration: f64) -> RadarParams {
    RadarParams { duration, ..Default::default() }
}

/// One radar on the origin looking at a breathing target without clutter.
pub fn still_scene(interval: f64, noise_std: f64) -> SceneConfig {
    SceneConfig {
        respiration: MotionModel::respiration(1.0e-3, interval, 0.0),
        body_motion: MotionModel::none(),
        clutter_scatterers: Vec::new(),
        noise_std,
        radar_positions: vec![[0.0, 0.0]],
        ..Default::default()
    }
}
