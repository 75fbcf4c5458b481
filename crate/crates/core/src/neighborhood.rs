//! Circular neighborhood sampling shared by the LBP and WLD operators.
//!
//! Neighbor `p` of a center `(xc, yc)` sits at
//! `(xc + R cos(2πp/P), yc + R sin(2πp/P))` and is read by bilinear
//! interpolation. Positions within `1e-9` of the pixel grid are snapped so
//! that integer positions read the pixel exactly.
//!
//! Interpolation is precomputed as a list of integer taps per neighbor. When
//! `P` is a multiple of four, only the first quadrant is derived from the
//! trigonometric positions and the other three are exact quarter-turn copies
//! of it. Rotating an image by 90° therefore cyclically shifts the sampled
//! neighbor sequence by `P/4` without changing a single bit of any value.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::imgio::GrayImage;

/// Largest supported perimeter count (codes are stored in `u32`).
pub const MAX_POINTS: usize = 32;

const SNAP_EPS: f64 = 1e-9;

/// Circular neighborhood: `points` perimeter samples at `radius` pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighborhoodSpec {
    pub points: usize,
    pub radius: f64,
}

impl NeighborhoodSpec {
    pub fn new(points: usize, radius: f64) -> Result<Self> {
        let spec = Self { points, radius };
        spec.validate()?;
        Ok(spec)
    }

    /// The three neighborhoods used throughout: (8,1), (16,2), (24,3).
    pub fn standard_scales() -> [NeighborhoodSpec; 3] {
        [
            Self {
                points: 8,
                radius: 1.0,
            },
            Self {
                points: 16,
                radius: 2.0,
            },
            Self {
                points: 24,
                radius: 3.0,
            },
        ]
    }

    pub fn validate(&self) -> Result<()> {
        if !(4..=MAX_POINTS).contains(&self.points) {
            return Err(Error::BadNeighborhood(format!(
                "P = {} outside [4, {MAX_POINTS}]",
                self.points
            )));
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::BadNeighborhood(format!(
                "R = {} must be positive",
                self.radius
            )));
        }
        Ok(())
    }

    /// Border margin skipped on every side: `ceil(R)`.
    pub fn margin(&self) -> u32 {
        self.radius.ceil() as u32
    }
}

impl fmt::Display for NeighborhoodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.points, self.radius)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Tap {
    pub dx: i64,
    pub dy: i64,
    pub w: f64,
}

/// Bilinear taps of one sample position, in a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Taps(Vec<Tap>);

impl Taps {
    fn at(dx: f64, dy: f64) -> Self {
        let (dx, dy) = (snap(dx), snap(dy));
        let (x0, y0) = (dx.floor(), dy.floor());
        let (fx, fy) = (dx - x0, dy - y0);
        let (ix, iy) = (x0 as i64, y0 as i64);
        let taps = [
            Tap {
                dx: ix,
                dy: iy,
                w: (1.0 - fx) * (1.0 - fy),
            },
            Tap {
                dx: ix + 1,
                dy: iy,
                w: fx * (1.0 - fy),
            },
            Tap {
                dx: ix,
                dy: iy + 1,
                w: (1.0 - fx) * fy,
            },
            Tap {
                dx: ix + 1,
                dy: iy + 1,
                w: fx * fy,
            },
        ];
        Self(taps.into_iter().filter(|t| t.w != 0.0).collect())
    }

    /// Quarter turn: offset `(dx, dy)` becomes `(-dy, dx)`.
    fn quarter_turn(&self) -> Self {
        Self(
            self.0
                .iter()
                .map(|t| Tap {
                    dx: -t.dy,
                    dy: t.dx,
                    w: t.w,
                })
                .collect(),
        )
    }

    /// Interpolated intensity, anchored on the first tap so a constant patch
    /// reproduces its value exactly.
    #[inline]
    pub fn sample(&self, img: &GrayImage, x: i64, y: i64) -> f64 {
        let first = self.0[0];
        let anchor = img.at(x + first.dx, y + first.dy) as f64;
        let mut acc = anchor;
        for t in &self.0[1..] {
            acc += t.w * (img.at(x + t.dx, y + t.dy) as f64 - anchor);
        }
        // the first tap contributes w0 * (anchor - anchor) = 0
        acc
    }
}

fn snap(v: f64) -> f64 {
    let r = v.round();
    if (v - r).abs() < SNAP_EPS {
        r
    } else {
        v
    }
}

/// Precomputed taps for every neighbor of a [`NeighborhoodSpec`].
#[derive(Debug, Clone)]
pub(crate) struct Sampler {
    spec: NeighborhoodSpec,
    neighbors: Vec<Taps>,
}

impl Sampler {
    pub fn new(spec: NeighborhoodSpec) -> Result<Self> {
        spec.validate()?;
        let p = spec.points;
        let position = |i: usize| {
            let angle = 2.0 * PI * i as f64 / p as f64;
            (spec.radius * angle.cos(), spec.radius * angle.sin())
        };
        let neighbors = if p.is_multiple_of(4) {
            let quarter: Vec<Taps> = (0..p / 4)
                .map(|i| {
                    let (dx, dy) = position(i);
                    Taps::at(dx, dy)
                })
                .collect();
            let mut all = quarter.clone();
            let mut current = quarter;
            for _ in 1..4 {
                current = current.iter().map(Taps::quarter_turn).collect();
                all.extend(current.iter().cloned());
            }
            all
        } else {
            (0..p)
                .map(|i| {
                    let (dx, dy) = position(i);
                    Taps::at(dx, dy)
                })
                .collect()
        };
        Ok(Self { spec, neighbors })
    }

    pub fn margin(&self) -> u32 {
        self.spec.margin()
    }

    /// Fills `out` with the P neighbor intensities of `(x, y)`; the caller
    /// has checked the margin.
    #[inline]
    pub fn sample_into(&self, img: &GrayImage, x: u32, y: u32, out: &mut [f64]) {
        let (x, y) = (x as i64, y as i64);
        for (slot, taps) in out.iter_mut().zip(&self.neighbors) {
            *slot = taps.sample(img, x, y);
        }
    }

    pub fn check_center(&self, img: &GrayImage, x: u32, y: u32) -> Result<()> {
        let m = self.margin();
        if x < m || y < m || x + m >= img.width() || y + m >= img.height() {
            return Err(Error::BorderViolation {
                x,
                y,
                radius: self.spec.radius,
            });
        }
        Ok(())
    }

    /// Ensures at least one center fits.
    pub fn check_image(&self, img: &GrayImage) -> Result<()> {
        let min_side = 2 * self.margin() + 1;
        if img.width() < min_side || img.height() < min_side {
            return Err(Error::ImageTooSmall {
                width: img.width(),
                height: img.height(),
                min_side,
            });
        }
        Ok(())
    }

    /// Iterates over every center whose neighborhood fits, row by row.
    pub fn centers(&self, img: &GrayImage) -> impl Iterator<Item = (u32, u32)> {
        let m = self.margin();
        let (w, h) = (img.width(), img.height());
        (m..h.saturating_sub(m)).flat_map(move |y| (m..w.saturating_sub(m)).map(move |x| (x, y)))
    }
}

/// Axis-aligned samples at distance R: right, down, left, up (image y grows
/// downward). Built by quarter-turning the `(R, 0)` taps.
#[derive(Debug, Clone)]
pub(crate) struct Compass {
    taps: [Taps; 4],
}

impl Compass {
    pub fn new(radius: f64) -> Self {
        let right = Taps::at(radius, 0.0);
        let down = right.quarter_turn();
        let left = down.quarter_turn();
        let up = left.quarter_turn();
        Self {
            taps: [right, down, left, up],
        }
    }

    /// `[right, down, left, up]` intensities.
    #[inline]
    pub fn sample(&self, img: &GrayImage, x: u32, y: u32) -> [f64; 4] {
        let (x, y) = (x as i64, y as i64);
        [
            self.taps[0].sample(img, x, y),
            self.taps[1].sample(img, x, y),
            self.taps[2].sample(img, x, y),
            self.taps[3].sample(img, x, y),
        ]
    }
}

/// Bilinearly interpolated intensities of the P neighbors of `(xc, yc)`.
pub fn sample_neighbors(
    img: &GrayImage,
    xc: u32,
    yc: u32,
    spec: NeighborhoodSpec,
) -> Result<Vec<f64>> {
    let sampler = Sampler::new(spec)?;
    sampler.check_center(img, xc, yc)?;
    let mut out = vec![0.0; spec.points];
    sampler.sample_into(img, xc, yc, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taps_snap_to_grid() {
        let t = Taps::at(1.0, 6.123e-17);
        assert_eq!(
            t.0,
            vec![Tap {
                dx: 1,
                dy: 0,
                w: 1.0
            }]
        );
    }

    #[test]
    fn quarter_turn_taps_follow_angle() {
        let s = Sampler::new(NeighborhoodSpec::new(8, 1.0).unwrap()).unwrap();
        // neighbor 2 is at angle π/2, i.e. (0, +1)
        assert_eq!(
            s.neighbors[2].0,
            vec![Tap {
                dx: 0,
                dy: 1,
                w: 1.0
            }]
        );
        assert_eq!(
            s.neighbors[4].0,
            vec![Tap {
                dx: -1,
                dy: 0,
                w: 1.0
            }]
        );
        assert_eq!(
            s.neighbors[6].0,
            vec![Tap {
                dx: 0,
                dy: -1,
                w: 1.0
            }]
        );
        for taps in &s.neighbors {
            let sum: f64 = taps.0.iter().map(|t| t.w).sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(NeighborhoodSpec::new(3, 1.0).is_err());
        assert!(NeighborhoodSpec::new(8, 0.0).is_err());
        assert!(NeighborhoodSpec::new(33, 1.0).is_err());
    }

    #[test]
    fn compass_directions() {
        let img = GrayImage::from_fn(5, 5, |x, y| (10 * y + x) as u8);
        let c = Compass::new(1.0);
        assert_eq!(c.sample(&img, 2, 2), [23.0, 32.0, 21.0, 12.0]);
    }
}
