//! Center-of-gravity regional splitting and assembly of composite descriptors.
//!
//! A [`DescriptorConfig`] names a base descriptor, the neighborhoods it is
//! evaluated at, whether the image is first split into four quadrants at its
//! center of gravity, and whether the matching WLD histogram is appended to
//! each LBP block. Its canonical string form is
//!
//! ```text
//! [cog|gcog]<name>[@<params>]
//!   name    LBP | riLBP | WLD | WLDRI | WeberLBP | riWeberLBP | GLCM | DCT | DFT
//!   params  P,R[+P,R...]       for the LBP/WLD family
//!           distance,levels    for GLCM (default 1,16)
//!           k                  for DCT / DFT (default 64)
//! ```
//!
//! e.g. `cogriWeberLBP@8,1+16,2+24,3`. `cog` splits at the intensity-weighted
//! centroid, `gcog` at the geometric center.
//!
//! Feature blocks are concatenated quadrant-major (TL, TR, BL, BR), then
//! scale-major, with the LBP block ahead of its WLD block.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::feature::FeatureVector;
use crate::glcm::{glcm_feature_vector, HARALICK_LEN};
use crate::imgio::{crop, GrayImage, Rect};
use crate::lbp::{lbp_counts, LbpVariant, NeighborhoodSpec};
use crate::spectral::{dct_features, dft_features, DEFAULT_COEFFICIENTS};
use crate::wld::{wld_counts, WldQuantization};

/// Base descriptor and its non-neighborhood parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Base {
    Lbp,
    RiLbp,
    Wld,
    WldRi,
    Glcm { distance: u32, levels: usize },
    Dct { k: usize },
    Dft { k: usize },
}

impl Base {
    fn uses_scales(self) -> bool {
        matches!(self, Base::Lbp | Base::RiLbp | Base::Wld | Base::WldRi)
    }
}

/// How the split point is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Centroid {
    /// Intensity-weighted centroid.
    #[default]
    Intensity,
    /// Geometric image center.
    Geometric,
}

/// Composite descriptor definition.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorConfig {
    pub base: Base,
    pub scales: Vec<NeighborhoodSpec>,
    pub cog: bool,
    pub centroid: Centroid,
    /// Append WLD (or WLDRI for riLBP) at the same scale after each LBP block.
    pub fuse_weber: bool,
}

impl DescriptorConfig {
    pub fn new(base: Base, scales: Vec<NeighborhoodSpec>) -> Self {
        Self {
            base,
            scales,
            cog: false,
            centroid: Centroid::Intensity,
            fuse_weber: false,
        }
    }

    pub fn with_cog(mut self, cog: bool) -> Self {
        self.cog = cog;
        self
    }

    pub fn with_weber(mut self, fuse: bool) -> Self {
        self.fuse_weber = fuse;
        self
    }

    pub fn with_centroid(mut self, centroid: Centroid) -> Self {
        self.centroid = centroid;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = || Error::InvalidConfig(self.to_string());
        if self.base.uses_scales() {
            if self.scales.is_empty() {
                return Err(bad());
            }
            for s in &self.scales {
                s.validate()?;
                if matches!(self.base, Base::WldRi | Base::RiLbp)
                    && self.fuse_weber
                    && s.points % 4 != 0
                {
                    return Err(bad());
                }
                if self.base == Base::WldRi && s.points % 4 != 0 {
                    return Err(bad());
                }
            }
        } else if !self.scales.is_empty() {
            return Err(bad());
        }
        if self.fuse_weber && !matches!(self.base, Base::Lbp | Base::RiLbp) {
            return Err(bad());
        }
        if let Base::Glcm { distance, levels } = self.base {
            if distance == 0 {
                return Err(Error::BadDistance);
            }
            if !(2..=256).contains(&levels) {
                return Err(Error::BadLevels(levels));
            }
        }
        Ok(())
    }

    fn base_name(&self) -> &'static str {
        match (self.base, self.fuse_weber) {
            (Base::Lbp, false) => "LBP",
            (Base::Lbp, true) => "WeberLBP",
            (Base::RiLbp, false) => "riLBP",
            (Base::RiLbp, true) => "riWeberLBP",
            (Base::Wld, _) => "WLD",
            (Base::WldRi, _) => "WLDRI",
            (Base::Glcm { .. }, _) => "GLCM",
            (Base::Dct { .. }, _) => "DCT",
            (Base::Dft { .. }, _) => "DFT",
        }
    }

    /// Dimension of one region's features.
    fn region_dimension(&self) -> usize {
        let weber = if self.fuse_weber {
            WldQuantization::default().dim()
        } else {
            0
        };
        match self.base {
            Base::Lbp => self
                .scales
                .iter()
                .map(|s| LbpVariant::U2.histogram_len(s.points) + weber)
                .sum(),
            Base::RiLbp => self
                .scales
                .iter()
                .map(|s| LbpVariant::Riu2.histogram_len(s.points) + weber)
                .sum(),
            Base::Wld | Base::WldRi => self.scales.len() * WldQuantization::default().dim(),
            Base::Glcm { .. } => 4 * HARALICK_LEN,
            Base::Dct { k } | Base::Dft { k } => k,
        }
    }

    /// Smallest quadrant side the descriptor can work on.
    pub fn min_region_side(&self) -> u32 {
        match self.base {
            Base::Glcm { distance, .. } => distance + 1,
            Base::Dct { .. } | Base::Dft { .. } => 1,
            _ => self
                .scales
                .iter()
                .map(|s| 2 * s.margin() + 2)
                .max()
                .unwrap_or(1),
        }
    }
}

/// Closed-form feature dimension of a configuration.
pub fn expected_dimension(cfg: &DescriptorConfig) -> usize {
    let regions = if cfg.cog { 4 } else { 1 };
    regions * cfg.region_dimension()
}

impl fmt::Display for DescriptorConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cog {
            f.write_str(match self.centroid {
                Centroid::Intensity => "cog",
                Centroid::Geometric => "gcog",
            })?;
        }
        f.write_str(self.base_name())?;
        match self.base {
            Base::Glcm { distance, levels } => write!(f, "@{distance},{levels}"),
            Base::Dct { k } | Base::Dft { k } => write!(f, "@{k}"),
            _ => {
                f.write_str("@")?;
                for (i, s) in self.scales.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{s}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for DescriptorConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(s.to_string());
        let s_trim = s.trim();
        let (head, params) = match s_trim.split_once('@') {
            Some((h, p)) => (h, Some(p)),
            None => (s_trim, None),
        };
        let (cog, centroid, name) = if let Some(rest) = head.strip_prefix("gcog") {
            (true, Centroid::Geometric, rest)
        } else if let Some(rest) = head.strip_prefix("cog") {
            (true, Centroid::Intensity, rest)
        } else {
            (false, Centroid::Intensity, head)
        };
        let (base, fuse_weber) = match name {
            "LBP" => (Base::Lbp, false),
            "riLBP" => (Base::RiLbp, false),
            "WeberLBP" => (Base::Lbp, true),
            "riWeberLBP" => (Base::RiLbp, true),
            "WLD" => (Base::Wld, false),
            "WLDRI" => (Base::WldRi, false),
            "GLCM" => {
                let (distance, levels) = match params {
                    None => (1, 16),
                    Some(p) => {
                        let (d, l) = p.split_once(',').ok_or_else(bad)?;
                        (
                            d.trim().parse().map_err(|_| bad())?,
                            l.trim().parse().map_err(|_| bad())?,
                        )
                    }
                };
                (Base::Glcm { distance, levels }, false)
            }
            "DCT" | "DFT" => {
                let k = match params {
                    None => DEFAULT_COEFFICIENTS,
                    Some(p) => p.trim().parse().map_err(|_| bad())?,
                };
                (
                    if name == "DCT" {
                        Base::Dct { k }
                    } else {
                        Base::Dft { k }
                    },
                    false,
                )
            }
            _ => return Err(bad()),
        };
        let scales = if base.uses_scales() {
            let p = params.ok_or_else(bad)?;
            p.split('+')
                .map(|pair| {
                    let (pts, r) = pair.split_once(',').ok_or_else(bad)?;
                    let pts: usize = pts.trim().parse().map_err(|_| bad())?;
                    let r: f64 = r.trim().parse().map_err(|_| bad())?;
                    NeighborhoodSpec::new(pts, r)
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        let cfg = DescriptorConfig {
            base,
            scales,
            cog,
            centroid,
            fuse_weber,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Split point in pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CogPoint {
    pub cx: f64,
    pub cy: f64,
}

/// Intensity-weighted centroid; the geometric center for an all-zero image.
pub fn center_of_gravity(img: &GrayImage) -> CogPoint {
    let mut total = 0u64;
    let mut sx = 0u64;
    let mut sy = 0u64;
    for y in 0..img.height() {
        for (x, &v) in img.row(y).iter().enumerate() {
            let v = v as u64;
            total += v;
            sx += x as u64 * v;
            sy += y as u64 * v;
        }
    }
    if total == 0 {
        return geometric_center(img);
    }
    CogPoint {
        cx: sx as f64 / total as f64,
        cy: sy as f64 / total as f64,
    }
}

pub fn geometric_center(img: &GrayImage) -> CogPoint {
    CogPoint {
        cx: (img.width() - 1) as f64 / 2.0,
        cy: (img.height() - 1) as f64 / 2.0,
    }
}

/// Quadrants `[TL, TR, BL, BR]` split at `(round(cx), round(cy))`, rounding
/// halves up. Columns `[0, sx)` go left, rows `[0, sy)` go top.
pub fn split_quadrants(img: &GrayImage, c: CogPoint, min_side: u32) -> Result<[GrayImage; 4]> {
    let rects = quadrant_rects(img, c);
    for r in &rects {
        if r.w < min_side.max(1) || r.h < min_side.max(1) {
            return Err(Error::DegenerateSplit {
                width: r.w,
                height: r.h,
                min_side: min_side.max(1),
            });
        }
    }
    Ok([
        crop(img, rects[0])?,
        crop(img, rects[1])?,
        crop(img, rects[2])?,
        crop(img, rects[3])?,
    ])
}

/// The four quadrant rectangles; some may be empty.
pub fn quadrant_rects(img: &GrayImage, c: CogPoint) -> [Rect; 4] {
    let (w, h) = (img.width(), img.height());
    let sx = ((c.cx + 0.5).floor().max(0.0) as u32).min(w);
    let sy = ((c.cy + 0.5).floor().max(0.0) as u32).min(h);
    [
        Rect::new(0, 0, sx, sy),
        Rect::new(sx, 0, w - sx, sy),
        Rect::new(0, sy, sx, h - sy),
        Rect::new(sx, sy, w - sx, h - sy),
    ]
}

fn region_features(img: &GrayImage, cfg: &DescriptorConfig, out: &mut Vec<f64>) -> Result<()> {
    let q = WldQuantization::default();
    let push_hist = |counts: Vec<u64>, out: &mut Vec<f64>| {
        out.extend(FeatureVector::from_counts(&counts, "").into_values());
    };
    match cfg.base {
        Base::Lbp | Base::RiLbp => {
            let (variant, ri) = if cfg.base == Base::Lbp {
                (LbpVariant::U2, false)
            } else {
                (LbpVariant::Riu2, true)
            };
            for &s in &cfg.scales {
                push_hist(lbp_counts(img, s, variant)?, out);
                if cfg.fuse_weber {
                    push_hist(wld_counts(img, s, q, ri)?, out);
                }
            }
        }
        Base::Wld | Base::WldRi => {
            for &s in &cfg.scales {
                push_hist(wld_counts(img, s, q, cfg.base == Base::WldRi)?, out);
            }
        }
        Base::Glcm { distance, levels } => {
            out.extend(glcm_feature_vector(img, distance, levels)?.into_values())
        }
        Base::Dct { k } => out.extend(dct_features(img, k)?.into_values()),
        Base::Dft { k } => out.extend(dft_features(img, k)?.into_values()),
    }
    Ok(())
}

/// Extracts the composite feature vector for `cfg`.
pub fn extract(img: &GrayImage, cfg: &DescriptorConfig) -> Result<FeatureVector> {
    cfg.validate()?;
    let mut values = Vec::with_capacity(expected_dimension(cfg));
    if cfg.cog {
        let c = match cfg.centroid {
            Centroid::Intensity => center_of_gravity(img),
            Centroid::Geometric => geometric_center(img),
        };
        for quadrant in split_quadrants(img, c, cfg.min_region_side())? {
            region_features(&quadrant, cfg, &mut values)?;
        }
    } else {
        region_features(img, cfg, &mut values)?;
    }
    debug_assert_eq!(values.len(), expected_dimension(cfg));
    Ok(FeatureVector::new(values, cfg.to_string()))
}
