//! Weber local descriptor.
//!
//! Each interior pixel yields a differential excitation
//! `ξ = arctan(Σ (I_i - I_c) / max(I_i, 1))` over its P circular neighbors and
//! a gradient orientation. The pair is quantized into a 2-D histogram of
//! `excitation_bins x orientation_bins` cells, flattened excitation-major.
//!
//! Orientation uses the axis samples at distance R:
//! `dI_h = I(left) - I(right)`, `dI_v = I(down) - I(up)` and the raw angle
//! `θ' = atan2(dI_h, dI_v) + π` wrapped into `[0, 2π)`. A zero gradient maps
//! to `θ' = 0`.
//!
//! The rotation-invariant variant (WLDRI) evaluates the same raw angle for
//! every cyclic shift `i` of the neighbor ring, with numerator
//! `I(x_{i+P/2}) - I(x_i)` and denominator `I(x_{i+3P/4}) - I(x_{i+P/4})`,
//! and keeps the minimum. A quarter-turn of the image shifts the ring by
//! `P/4`, which permutes that set of angles and leaves the minimum unchanged.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::feature::FeatureVector;
use crate::imgio::GrayImage;
use crate::neighborhood::{Compass, NeighborhoodSpec, Sampler};

/// Histogram resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WldQuantization {
    pub excitation_bins: usize,
    pub orientation_bins: usize,
}

impl Default for WldQuantization {
    /// 6 excitation bins x 8 orientation bins = 48 features.
    fn default() -> Self {
        Self {
            excitation_bins: 6,
            orientation_bins: 8,
        }
    }
}

impl WldQuantization {
    pub fn dim(&self) -> usize {
        self.excitation_bins * self.orientation_bins
    }

    fn validate(&self) -> Result<()> {
        if self.excitation_bins == 0 || self.orientation_bins == 0 {
            return Err(Error::InvalidConfig(format!(
                "WLD quantization {}x{}",
                self.excitation_bins, self.orientation_bins
            )));
        }
        Ok(())
    }
}

/// One quantized pixel: excitation in radians and orientation bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WldSample {
    pub xi: f64,
    pub theta_q: usize,
}

/// `arctan` of the summed Weber fractions. Terms are summed in ascending
/// order so the result does not depend on the neighbor ordering.
pub fn excitation_from_neighbors(neighbors: &[f64], center: f64) -> f64 {
    let mut terms: Vec<f64> = Vec::with_capacity(neighbors.len());
    excitation_with_scratch(neighbors, center, &mut terms)
}

#[inline]
fn excitation_with_scratch(neighbors: &[f64], center: f64, terms: &mut Vec<f64>) -> f64 {
    terms.clear();
    terms.extend(neighbors.iter().map(|&g| (g - center) / g.max(1.0)));
    terms.sort_unstable_by(f64::total_cmp);
    terms.iter().sum::<f64>().atan()
}

/// Raw orientation angle in `[0, 2π)`; a zero gradient gives 0.
pub fn raw_angle(d_h: f64, d_v: f64) -> f64 {
    if d_h == 0.0 && d_v == 0.0 {
        return 0.0;
    }
    let theta = d_h.atan2(d_v) + PI;
    if theta >= TAU {
        theta - TAU
    } else {
        theta
    }
}

/// `t = ⌊θ' / (2π/T) + 1/2⌋ mod T`.
pub fn quantize_orientation(theta_prime: f64, bins: usize) -> usize {
    let t = (theta_prime / (TAU / bins as f64) + 0.5).floor() as i64;
    t.rem_euclid(bins as i64) as usize
}

/// Equal-width excitation bin over `[-π/2, π/2]`; `ξ = 0` falls in bin
/// `bins / 2`.
pub fn quantize_excitation(xi: f64, bins: usize) -> usize {
    let b = (xi * bins as f64 / PI + bins as f64 / 2.0).floor();
    b.clamp(0.0, (bins - 1) as f64) as usize
}

/// Minimum raw angle over the P cyclic shifts of the neighbor ring.
pub fn orientation_ri_from_neighbors(neighbors: &[f64]) -> f64 {
    let p = neighbors.len();
    debug_assert!(p.is_multiple_of(4));
    let (half, quarter, three_quarter) = (p / 2, p / 4, 3 * p / 4);
    (0..p)
        .map(|i| {
            let num = neighbors[(i + half) % p] - neighbors[i];
            let den = neighbors[(i + three_quarter) % p] - neighbors[(i + quarter) % p];
            raw_angle(num, den)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Differential excitation at one pixel.
pub fn differential_excitation(
    img: &GrayImage,
    xc: u32,
    yc: u32,
    spec: NeighborhoodSpec,
) -> Result<f64> {
    let sampler = Sampler::new(spec)?;
    sampler.check_center(img, xc, yc)?;
    let mut neighbors = vec![0.0; spec.points];
    sampler.sample_into(img, xc, yc, &mut neighbors);
    Ok(excitation_from_neighbors(
        &neighbors,
        img.get(xc, yc) as f64,
    ))
}

/// Raw orientation `θ'` at one pixel from the axis samples at radius R.
pub fn orientation(img: &GrayImage, xc: u32, yc: u32, spec: NeighborhoodSpec) -> Result<f64> {
    let sampler = Sampler::new(spec)?;
    sampler.check_center(img, xc, yc)?;
    let [right, down, left, up] = Compass::new(spec.radius).sample(img, xc, yc);
    Ok(raw_angle(left - right, down - up))
}

/// Rotation-invariant orientation at one pixel. Requires `P % 4 == 0`.
pub fn orientation_ri(img: &GrayImage, xc: u32, yc: u32, spec: NeighborhoodSpec) -> Result<f64> {
    require_quarter_symmetric(spec)?;
    let sampler = Sampler::new(spec)?;
    sampler.check_center(img, xc, yc)?;
    let mut neighbors = vec![0.0; spec.points];
    sampler.sample_into(img, xc, yc, &mut neighbors);
    Ok(orientation_ri_from_neighbors(&neighbors))
}

fn require_quarter_symmetric(spec: NeighborhoodSpec) -> Result<()> {
    if !spec.points.is_multiple_of(4) {
        return Err(Error::BadNeighborhood(format!(
            "rotation-invariant orientation needs P divisible by 4, got {}",
            spec.points
        )));
    }
    Ok(())
}

pub fn descriptor_tag(spec: NeighborhoodSpec, rotation_invariant: bool) -> String {
    let name = if rotation_invariant { "WLDRI" } else { "WLD" };
    format!("{name}@{spec}")
}

/// Per-pixel `(ξ, t)` samples over the interior, row-major.
pub fn wld_samples(
    img: &GrayImage,
    spec: NeighborhoodSpec,
    q: WldQuantization,
    rotation_invariant: bool,
) -> Result<Vec<WldSample>> {
    q.validate()?;
    if rotation_invariant {
        require_quarter_symmetric(spec)?;
    }
    let sampler = Sampler::new(spec)?;
    sampler.check_image(img)?;
    let compass = Compass::new(spec.radius);
    let mut neighbors = vec![0.0; spec.points];
    let mut scratch = Vec::with_capacity(spec.points);
    let mut out = Vec::new();
    for (x, y) in sampler.centers(img) {
        sampler.sample_into(img, x, y, &mut neighbors);
        let xi = excitation_with_scratch(&neighbors, img.get(x, y) as f64, &mut scratch);
        let theta = if rotation_invariant {
            orientation_ri_from_neighbors(&neighbors)
        } else {
            let [right, down, left, up] = compass.sample(img, x, y);
            raw_angle(left - right, down - up)
        };
        out.push(WldSample {
            xi,
            theta_q: quantize_orientation(theta, q.orientation_bins),
        });
    }
    Ok(out)
}

pub(crate) fn wld_counts(
    img: &GrayImage,
    spec: NeighborhoodSpec,
    q: WldQuantization,
    rotation_invariant: bool,
) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; q.dim()];
    for s in wld_samples(img, spec, q, rotation_invariant)? {
        let e = quantize_excitation(s.xi, q.excitation_bins);
        counts[e * q.orientation_bins + s.theta_q] += 1;
    }
    Ok(counts)
}

/// L1-normalized 2-D WLD histogram flattened excitation-major.
pub fn wld_histogram(
    img: &GrayImage,
    spec: NeighborhoodSpec,
    q: WldQuantization,
    rotation_invariant: bool,
) -> Result<FeatureVector> {
    let counts = wld_counts(img, spec, q, rotation_invariant)?;
    Ok(FeatureVector::from_counts(
        &counts,
        descriptor_tag(spec, rotation_invariant),
    ))
}
