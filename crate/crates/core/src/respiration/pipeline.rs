use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::acf::{window_energies, LagGeometry, MIN_WINDOW_ENERGY};
use super::fusion::{fuse_intervals, IntervalEstimate, PixelContribution};
use super::interval::LagBand;
use super::residual::CosineBank;
use super::{displacement, velocity, IntervalSeries, Method, PipelineConfig};
use crate::error::{Error, Result};
use crate::imaging::{
    extract_region, locate_target, taylor_weights, ChannelImage, IntensityMap, Pixel, PixelImage, PolarGrid,
    RegionMask,
};
use crate::sim::{range_transform, DataCube, RangeProfiles, RangeWindow, UniformAxis};

/// Interval and residual of one pixel at one hop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PixelHop {
    pub tau: f64,
    pub epsilon: f64,
}

/// Why a pixel produced no estimate at a hop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HopFailure {
    /// One of the correlation windows carried no energy.
    DegenerateWindow,
    /// The weighted correlation was non-positive across the lag band.
    NoPeak,
}

pub type HopOutcome = std::result::Result<PixelHop, HopFailure>;

/// Per-hop correlation analysis of whole velocity tracks.
///
/// Hop centres sit on multiples of the hop length, starting at the first one
/// whose window and lag range fit in the record. Cross products are summed in
/// fixed blocks shared between neighbouring hops, so a track costs about as
/// much as a handful of full-record passes instead of one window sum per lag
/// and hop.
#[derive(Debug, Clone)]
pub struct HopAnalyzer {
    geom: LagGeometry,
    band: LagBand,
    bank: CosineBank,
    refine: bool,
    slow_time: UniformAxis,
    centers: Vec<usize>,
    block: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl HopAnalyzer {
    pub fn new(cfg: &PipelineConfig, slow_time: UniformAxis) -> Result<Self> {
        cfg.validate()?;
        let step = slow_time.step;
        let hop = (cfg.hop / step).round();
        if hop < 1.0 || (hop * step - cfg.hop).abs() > 1e-6 * cfg.hop {
            return Err(Error::InvalidParameter(format!(
                "hop {} s is not a whole number of {} s samples",
                cfg.hop, step
            )));
        }
        let hop = hop as usize;
        let geom = LagGeometry::new(cfg, step);
        let bank = CosineBank::new(cfg, step);
        if geom.half_window == 0 {
            return Err(Error::InvalidParameter("correlation window shorter than one sample".into()));
        }
        let first = geom.first_center().div_ceil(hop) * hop;
        let n = slow_time.len;
        let centers: Vec<usize> = (first..).step_by(hop).take_while(|&c| c + geom.half_window < n).collect();
        if centers.is_empty() {
            return Err(Error::InsufficientSamples { needed: first + geom.half_window + 1, got: n });
        }
        Ok(Self {
            geom,
            band: LagBand::new(cfg, step),
            bank,
            refine: cfg.refine_peak,
            slow_time,
            centers,
            block: gcd(hop, 2 * geom.half_window),
        })
    }

    pub fn hop_times(&self) -> Vec<f64> {
        self.centers.iter().map(|&c| self.slow_time.value(c)).collect()
    }

    pub fn n_hops(&self) -> usize {
        self.centers.len()
    }

    /// Correlation slices `ρ(t_h, τ_k)` for every hop, `(hop, lag)` order.
    /// Entries of a hop are `NaN` when its window is degenerate.
    pub fn correlations(&self, v: &[f64]) -> Vec<f64> {
        let h = self.geom.half_window;
        let lags = self.geom.max_lag + 1;
        let b = self.block;
        let n_hops = self.centers.len();
        // Window starts differ by whole hops, hence by whole blocks.
        let origin = self.centers[0] - h;
        let n_blocks = (self.centers[n_hops - 1] + h - origin) / b;
        let per_window = 2 * h / b;

        let energies = window_energies(v, h);
        let mut cross = vec![0.0; n_hops * lags];
        let mut blocks = vec![0.0; n_blocks];
        for k in 0..lags {
            for (m, slot) in blocks.iter_mut().enumerate() {
                let j0 = origin + m * b;
                *slot = (j0..j0 + b).map(|j| v[j] * v[j - k]).sum();
            }
            for (hi, &c) in self.centers.iter().enumerate() {
                let start = c - h;
                let m0 = (start - origin) / b;
                let mut s: f64 = blocks[m0..m0 + per_window].iter().sum();
                let end = start + 2 * h;
                s += 0.5 * (v[end] * v[end - k] - v[start] * v[start - k]);
                cross[hi * lags + k] = s;
            }
        }
        for (hi, &c) in self.centers.iter().enumerate() {
            let start = c - h;
            let e1 = energies[start];
            let row = &mut cross[hi * lags..(hi + 1) * lags];
            for (k, r) in row.iter_mut().enumerate() {
                let e2 = energies[start - k];
                *r = if e1 < MIN_WINDOW_ENERGY || e2 < MIN_WINDOW_ENERGY {
                    f64::NAN
                } else {
                    *r / (e1 * e2).sqrt()
                };
            }
        }
        cross
    }

    /// Interval and residual at every hop of one velocity track.
    pub fn analyze_track(&self, v: &[f64]) -> Vec<HopOutcome> {
        let lags = self.geom.max_lag + 1;
        let step = self.slow_time.step;
        let rho = self.correlations(v);
        let fits = self.bank.fit_batch(&rho, lags);
        rho.chunks_exact(lags)
            .zip(fits)
            .map(|(r, fit)| {
                if r.iter().any(|x| x.is_nan()) {
                    return Err(HopFailure::DegenerateWindow);
                }
                let tau = self.band.pick(r, step, self.refine).map_err(|_| HopFailure::NoPeak)?;
                Ok(PixelHop { tau, epsilon: fit.epsilon })
            })
            .collect()
    }
}

/// Outcomes of one pixel at every hop.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelHops {
    pub pixel: Pixel,
    pub hops: Vec<HopOutcome>,
}

/// Localization, region and per-pixel hop outcomes of one image. Either
/// method, at any threshold, can be read off without recomputation.
#[derive(Debug, Clone)]
pub struct RegionAnalysis {
    pub hop_times: Vec<f64>,
    pub intensity: IntensityMap,
    pub region: RegionMask,
    /// Region pixels in raster order.
    pub pixels: Vec<PixelHops>,
}

impl RegionAnalysis {
    pub fn anchor(&self) -> Pixel {
        self.region.anchor
    }

    fn anchor_hops(&self) -> &PixelHops {
        self.pixels.iter().find(|p| p.pixel == self.region.anchor).expect("region always contains its anchor")
    }

    /// Strongest pixel only, ungated. Hops where that pixel fails are
    /// reported as rejected with no estimate.
    pub fn conventional(&self) -> IntervalSeries {
        let anchor = self.anchor_hops();
        let estimates = self
            .hop_times
            .iter()
            .zip(&anchor.hops)
            .map(|(&time, outcome)| match outcome {
                Ok(h) => IntervalEstimate {
                    time,
                    tau_hat: Some(h.tau),
                    fused: Some(h.tau),
                    contributions: vec![PixelContribution {
                        pixel: anchor.pixel,
                        tau: h.tau,
                        epsilon: h.epsilon,
                    }],
                    weight_sum: 1.0 / h.epsilon.max(super::fusion::MIN_RESIDUAL),
                    region_size: 1,
                    accepted: true,
                },
                Err(_) => IntervalEstimate::empty(time, 1),
            })
            .collect();
        IntervalSeries { method: Method::Conventional, eps_th: None, estimates }
    }

    /// Residual-weighted fusion over the region, gated at `eps_th`.
    ///
    /// Fails with [`Error::EmptyRegion`] when no region pixel yields an
    /// estimate at any hop.
    pub fn proposed(&self, eps_th: f64) -> Result<IntervalSeries> {
        if !(eps_th > 0.0) {
            return Err(Error::InvalidParameter(format!("eps_th must be positive, got {eps_th}")));
        }
        if self.pixels.iter().all(|p| p.hops.iter().all(|h| h.is_err())) {
            return Err(Error::EmptyRegion);
        }
        let m = self.pixels.len();
        let estimates = self
            .hop_times
            .iter()
            .enumerate()
            .map(|(i, &time)| {
                let contributions: Vec<PixelContribution> = self
                    .pixels
                    .iter()
                    .filter_map(|p| {
                        p.hops[i].ok().map(|h| PixelContribution {
                            pixel: p.pixel,
                            tau: h.tau,
                            epsilon: h.epsilon,
                        })
                    })
                    .collect();
                if contributions.is_empty() {
                    Ok(IntervalEstimate::empty(time, m))
                } else {
                    fuse_intervals(time, contributions, m, eps_th)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalSeries { method: Method::Proposed, eps_th: Some(eps_th), estimates })
    }

    pub fn series(&self, method: Method, eps_th: f64) -> Result<IntervalSeries> {
        match method {
            Method::Conventional => Ok(self.conventional()),
            Method::Proposed => self.proposed(eps_th),
        }
    }
}

fn analyze_pixels(
    img: &impl PixelImage,
    pixels: &[Pixel],
    cfg: &PipelineConfig,
) -> Result<(Vec<f64>, Vec<PixelHops>)> {
    if !img.clutter_removed() {
        return Err(Error::ClutterNotRemoved);
    }
    let analyzer = HopAnalyzer::new(cfg, img.slow_time())?;
    let pixels = pixels
        .par_iter()
        .map(|&pixel| {
            let v = velocity(&displacement(img, pixel)?)?;
            Ok(PixelHops { pixel, hops: analyzer.analyze_track(&v.values) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((analyzer.hop_times(), pixels))
}

/// Localizes the target, extracts the region at `cfg.eta` and analyzes
/// every region pixel at every hop.
pub fn analyze_region(img: &impl PixelImage, cfg: &PipelineConfig) -> Result<RegionAnalysis> {
    cfg.validate()?;
    let intensity = img.mean_intensity()?;
    let anchor = locate_target(&intensity)?;
    let region = extract_region(&intensity, anchor, cfg.eta);
    let (hop_times, pixels) = analyze_pixels(img, &region.pixels, cfg)?;
    Ok(RegionAnalysis { hop_times, intensity, region, pixels })
}

/// Ungated single-pixel estimate at `r0`.
pub fn conventional_estimate(
    img: &impl PixelImage,
    r0: Pixel,
    cfg: &PipelineConfig,
) -> Result<IntervalSeries> {
    cfg.validate()?;
    let (hop_times, pixels) = analyze_pixels(img, &[r0], cfg)?;
    let intensity = IntensityMap::new(vec![0.0; img.grid().n_cells()], img.grid().clone())?;
    let mut members = vec![false; img.grid().n_cells()];
    members[img.grid().index(r0)] = true;
    let region = RegionMask { members, anchor: r0, pixels: vec![r0] };
    Ok(RegionAnalysis { hop_times, intensity, region, pixels }.conventional())
}

/// Full proposed pipeline at `cfg.eps_th`.
pub fn run_proposed(img: &impl PixelImage, cfg: &PipelineConfig) -> Result<IntervalSeries> {
    analyze_region(img, cfg)?.proposed(cfg.eps_th)
}

/// Range bin with the largest slow-time fluctuation power summed over
/// channels.
pub fn strongest_moving_bin(profiles: &RangeProfiles) -> usize {
    let (n_slow, n_range, k) = (profiles.n_slow(), profiles.n_range(), profiles.n_channels());
    let cells = n_range * k;
    // One streaming pass: per-cell sums give the fluctuation power as
    // Σ|x|² − |Σx|²/N.
    let mut sum = vec![num_complex::Complex64::new(0.0, 0.0); cells];
    let mut energy = vec![0.0; cells];
    for frame in profiles.values.chunks_exact(cells) {
        for ((s, e), x) in sum.iter_mut().zip(energy.iter_mut()).zip(frame) {
            *s += x;
            *e += x.norm_sqr();
        }
    }
    let power: Vec<f64> = (0..n_range)
        .map(|bin| {
            (bin * k..(bin + 1) * k).map(|c| (energy[c] - sum[c].norm_sqr() / n_slow as f64).max(0.0)).sum()
        })
        .collect();
    let mut best = 0;
    for (i, &p) in power.iter().enumerate() {
        if p > power[best] {
            best = i;
        }
    }
    best
}

/// Range-gates the profiles around the strongest moving bin, builds the
/// polar image from `cfg` and removes static clutter.
pub fn prepare_image(profiles: RangeProfiles, cfg: &PipelineConfig) -> Result<ChannelImage> {
    cfg.validate()?;
    let profiles = if cfg.range_gate > 0.0 {
        let centre = strongest_moving_bin(&profiles);
        let half = (cfg.range_gate / profiles.range.step).round() as usize;
        let lo = centre.saturating_sub(half);
        let hi = (centre + half + 1).min(profiles.n_range());
        profiles.gate(lo, hi)?
    } else {
        profiles
    };
    let grid = PolarGrid::new(profiles.range.values(), cfg.angle_bins())?;
    let taper = taylor_weights(profiles.n_channels(), cfg.taylor_sidelobe_db, cfg.taylor_nbar);
    let layout = profiles.layout.clone();
    ChannelImage::new(profiles, &layout, &grid, &taper)?.suppress_clutter()
}

/// Range transform, image preparation and region analysis of one cube.
pub fn analyze_cube(cube: DataCube, cfg: &PipelineConfig) -> Result<RegionAnalysis> {
    let img = prepare_image(range_transform(cube, RangeWindow::Hann)?, cfg)?;
    analyze_region(&img, cfg)
}
