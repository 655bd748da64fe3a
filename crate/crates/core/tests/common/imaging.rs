//! Imaging checks shared by the integration tests and the acceptance suite.

use mmresp_core::imaging::{
    locate_target, steering_weights, taylor_weights, ChannelImage, PixelImage, PolarGrid,
};
use mmresp_core::respiration::{prepare_image, PipelineConfig};
use mmresp_core::sim::{
    range_transform, synthesize_cube, ArrayLayout, MotionModel, RadarParams, RangeProfiles, RangeWindow,
    SceneConfig,
};

use super::checks::Check;

pub fn layout() -> ArrayLayout {
    ArrayLayout::mimo_3x4(RadarParams::default().wavelength()).unwrap()
}

pub fn taper() -> Vec<f64> {
    taylor_weights(12, -30.0, 4)
}

/// A plane wave from each grid angle peaks at that angle, exactly.
pub fn steering_exactness() -> Check {
    let layout = layout();
    let grid = PolarGrid::new(vec![0.0], mmresp_core::imaging::default_angles()).unwrap();
    let cw: Vec<Vec<_>> = grid
        .angle_bins
        .iter()
        .map(|&a| steering_weights(&layout, &taper(), a).iter().map(|w| w.conj()).collect())
        .collect();
    for (j, &angle) in grid.angle_bins.iter().enumerate() {
        let s = steering_weights(&layout, &vec![1.0; layout.len()], angle);
        let power = |w: &Vec<num_complex::Complex64>| {
            w.iter().zip(&s).map(|(a, b)| a * b).sum::<num_complex::Complex64>().norm()
        };
        let best = (0..cw.len()).max_by(|&a, &b| power(&cw[a]).total_cmp(&power(&cw[b]))).unwrap();
        if best != j {
            return Err(format!("steering vector at {angle}° peaks at {}°", grid.angle_bins[best]));
        }
    }
    Ok(())
}

fn profiles(scene: &SceneConfig, duration: f64) -> RangeProfiles {
    let params = RadarParams { duration, ..Default::default() };
    let cube = synthesize_cube(scene, &layout(), &params, 0).unwrap();
    range_transform(cube, RangeWindow::Hann).unwrap()
}

fn bin_energy(p: &RangeProfiles, bin: usize) -> f64 {
    (0..p.n_slow()).flat_map(|s| p.channels(s, bin)).map(|x| x.norm_sqr()).sum()
}

/// Breathing target among static scatterers without noise or bursts.
pub fn clutter_scene() -> SceneConfig {
    SceneConfig {
        body_motion: MotionModel::none(),
        noise_std: 0.0,
        radar_positions: vec![[0.0, 0.0]],
        ..Default::default()
    }
}

/// Smallest energy reduction, in dB, at the range bins of the static
/// scatterers after slow-time mean subtraction.
pub fn static_suppression_db(scene: &SceneConfig, duration: f64) -> f64 {
    let raw = profiles(scene, duration);
    let grid = PolarGrid::with_default_angles(&raw.range).unwrap();
    let bins: Vec<usize> = scene.clutter_scatterers.iter().map(|c| raw.range.nearest(c.range)).collect();
    let before: Vec<f64> = bins.iter().map(|&b| bin_energy(&raw, b)).collect();
    let clean = ChannelImage::new(raw, &layout(), &grid, &taper()).unwrap().suppress_clutter().unwrap();
    bins.iter()
        .zip(before)
        .map(|(&b, e)| 10.0 * (e / bin_energy(clean.profiles(), b)).log10())
        .fold(f64::INFINITY, f64::min)
}

/// Offset in (range, angle) bins between the brightest cell and the cell
/// nearest the true target position.
pub fn localization_offset(scene: &SceneConfig, duration: f64) -> (isize, isize) {
    let img = prepare_image(profiles(scene, duration), &PipelineConfig::default()).unwrap();
    let found = locate_target(&img.mean_intensity().unwrap()).unwrap();
    let [rx, ry] = scene.radar_positions[0];
    let [tx, ty] = scene.target_position();
    let (dx, dy) = (tx - rx, ty - ry);
    let truth = img.grid().nearest(dx.hypot(dy), dy.atan2(dx).to_degrees());
    (found.range as isize - truth.range as isize, found.angle as isize - truth.angle as isize)
}

/// Peak sidelobe of the tapered virtual array, in dB, from the array factor
/// on a fine grid of direction cosines.
pub fn taylor_peak_sidelobe_db() -> f64 {
    let layout = layout();
    let w = taper();
    let n = 40_001;
    let af: Vec<f64> = (0..n)
        .map(|i| {
            let u = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
            let (mut re, mut im) = (0.0, 0.0);
            for (&x, &a) in layout.virtual_positions.iter().zip(&w) {
                let phase = 2.0 * std::f64::consts::PI * x * u / layout.wavelength;
                re += a * phase.cos();
                im += a * phase.sin();
            }
            re.hypot(im)
        })
        .collect();
    let centre = n / 2;
    let (mut lo, mut hi) = (centre, centre);
    while hi + 1 < n && af[hi + 1] <= af[hi] {
        hi += 1;
    }
    while lo > 0 && af[lo - 1] <= af[lo] {
        lo -= 1;
    }
    let peak = af[centre];
    af[..lo].iter().chain(&af[hi + 1..]).map(|&v| 20.0 * (v / peak).log10()).fold(f64::MIN, f64::max)
}
