//! Whole-image 2-D DCT and DFT with coefficient selection.
//!
//! For a `W x H` image `f(x, y)` and frequencies `u ∈ [0, W)`, `v ∈ [0, H)`:
//!
//! ```text
//! DCT  F(u, v) = 1/sqrt(WH) α(u) α(v) Σx Σy f(x, y) cos((2x+1)uπ / 2W) cos((2y+1)vπ / 2H)
//!      α(0) = 1/√2, α(k) = 1 otherwise
//! DFT  F(u, v) = Σx Σy f(x, y) exp(-j2π ux/W) exp(-j2π vy/H)
//! ```
//!
//! Both are evaluated separably (rows, then columns) from precomputed
//! basis tables. Grids are stored row-major with `v` as the row index.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::feature::FeatureVector;
use crate::imgio::GrayImage;

/// Default number of retained coefficients.
pub const DEFAULT_COEFFICIENTS: usize = 64;

/// Transform output with the source image's dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientGrid<T> {
    width: usize,
    height: usize,
    values: Vec<T>,
}

impl<T: Copy> CoefficientGrid<T> {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Coefficient at horizontal frequency `u`, vertical frequency `v`.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> T {
        self.values[v * self.width + u]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

fn alpha(k: usize) -> f64 {
    if k == 0 {
        std::f64::consts::FRAC_1_SQRT_2
    } else {
        1.0
    }
}

/// `table[k * n + x] = cos((2x+1) k π / 2n)`.
fn dct_basis(n: usize) -> Vec<f64> {
    let mut t = Vec::with_capacity(n * n);
    for k in 0..n {
        for x in 0..n {
            // reduce the angle index modulo 4n before scaling
            let idx = ((2 * x + 1) * k) % (4 * n);
            t.push((idx as f64 * PI / (2 * n) as f64).cos());
        }
    }
    t
}

/// `table[k * n + x] = exp(-j 2π kx / n)`.
fn dft_basis(n: usize) -> Vec<Complex64> {
    let mut t = Vec::with_capacity(n * n);
    for k in 0..n {
        for x in 0..n {
            let idx = (k * x) % n;
            t.push(Complex64::from_polar(
                1.0,
                -2.0 * PI * idx as f64 / n as f64,
            ));
        }
    }
    t
}

/// Separable 2-D DCT.
pub fn dct2(img: &GrayImage) -> CoefficientGrid<f64> {
    let (w, h) = (img.width() as usize, img.height() as usize);
    let bw = dct_basis(w);
    let bh = if h == w { bw.clone() } else { dct_basis(h) };
    let px = img.as_raw();

    // rows: tmp[y][u] = Σx f(x, y) cos_u(x)
    let mut tmp = vec![0.0; w * h];
    for y in 0..h {
        let row = &px[y * w..(y + 1) * w];
        for u in 0..w {
            let basis = &bw[u * w..(u + 1) * w];
            tmp[y * w + u] = row.iter().zip(basis).map(|(&f, &c)| f as f64 * c).sum();
        }
    }
    let scale = 1.0 / ((w * h) as f64).sqrt();
    let mut values = vec![0.0; w * h];
    for v in 0..h {
        let basis = &bh[v * h..(v + 1) * h];
        for u in 0..w {
            let s: f64 = (0..h).map(|y| basis[y] * tmp[y * w + u]).sum();
            values[v * w + u] = scale * alpha(u) * alpha(v) * s;
        }
    }
    CoefficientGrid {
        width: w,
        height: h,
        values,
    }
}

/// Separable unnormalized forward 2-D DFT.
pub fn dft2(img: &GrayImage) -> CoefficientGrid<Complex64> {
    let (w, h) = (img.width() as usize, img.height() as usize);
    let bw = dft_basis(w);
    let bh = if h == w { bw.clone() } else { dft_basis(h) };
    let px = img.as_raw();

    let mut tmp = vec![Complex64::new(0.0, 0.0); w * h];
    for y in 0..h {
        let row = &px[y * w..(y + 1) * w];
        for u in 0..w {
            let basis = &bw[u * w..(u + 1) * w];
            tmp[y * w + u] = row.iter().zip(basis).map(|(&f, &e)| e * f as f64).sum();
        }
    }
    let mut values = vec![Complex64::new(0.0, 0.0); w * h];
    for v in 0..h {
        let basis = &bh[v * h..(v + 1) * h];
        for u in 0..w {
            values[v * w + u] = (0..h).map(|y| basis[y] * tmp[y * w + u]).sum();
        }
    }
    CoefficientGrid {
        width: w,
        height: h,
        values,
    }
}

/// JPEG-style zigzag over a grid with `rows x cols` entries, as `(row, col)`.
pub fn zigzag(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(rows * cols);
    for s in 0..(rows + cols).saturating_sub(1) {
        let r_lo = s.saturating_sub(cols - 1);
        let r_hi = s.min(rows - 1);
        if s % 2 == 1 {
            out.extend((r_lo..=r_hi).map(|r| (r, s - r)));
        } else {
            out.extend((r_lo..=r_hi).rev().map(|r| (r, s - r)));
        }
    }
    out
}

/// First `k` DCT coefficients in zigzag order, rows indexed by `v`.
pub fn dct_features(img: &GrayImage, k: usize) -> Result<FeatureVector> {
    let capacity = img.width() as usize * img.height() as usize;
    if k > capacity {
        return Err(Error::BadK { k, capacity });
    }
    let grid = dct2(img);
    let values = zigzag(grid.height(), grid.width())
        .into_iter()
        .take(k)
        .map(|(v, u)| grid.get(u, v))
        .collect();
    Ok(FeatureVector::new(values, format!("DCT@{k}")))
}

/// Signed frequency in `[-n/2, n/2)`.
#[inline]
fn fold(k: usize, n: usize) -> i64 {
    if 2 * k >= n {
        k as i64 - n as i64
    } else {
        k as i64
    }
}

/// Frequency indices `(u, v)` ordered by folded radius `a² + b²`, ties by
/// folded `a`, then folded `b`.
pub fn low_frequency_order(width: usize, height: usize) -> Vec<(usize, usize)> {
    let mut idx: Vec<(i64, i64, usize, usize)> = (0..height)
        .flat_map(|v| (0..width).map(move |u| (fold(u, width), fold(v, height), u, v)))
        .collect();
    idx.sort_by_key(|&(a, b, _, _)| (a * a + b * b, a, b));
    idx.into_iter().map(|(_, _, u, v)| (u, v)).collect()
}

/// Magnitudes of the `k` lowest-frequency DFT coefficients.
pub fn dft_features(img: &GrayImage, k: usize) -> Result<FeatureVector> {
    let (w, h) = (img.width() as usize, img.height() as usize);
    if k > w * h {
        return Err(Error::BadK { k, capacity: w * h });
    }
    if k == 0 {
        return Ok(FeatureVector::new(Vec::new(), "DFT@0"));
    }
    let grid = dft2(img);
    let values = low_frequency_order(w, h)
        .into_iter()
        .take(k)
        .map(|(u, v)| grid.get(u, v).norm())
        .collect();
    Ok(FeatureVector::new(values, format!("DFT@{k}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zigzag_three_by_three() {
        assert_eq!(
            zigzag(3, 3),
            vec![
                (0, 0),
                (0, 1),
                (1, 0),
                (2, 0),
                (1, 1),
                (0, 2),
                (1, 2),
                (2, 1),
                (2, 2)
            ]
        );
    }

    #[test]
    fn zigzag_rectangular_is_a_permutation() {
        for (r, c) in [(1, 5), (4, 2), (7, 3), (144, 144)] {
            let mut z = zigzag(r, c);
            assert_eq!(z.len(), r * c);
            z.sort();
            z.dedup();
            assert_eq!(z.len(), r * c);
        }
    }

    #[test]
    fn constant_image_transforms() {
        let img = GrayImage::filled(6, 4, 10);
        let d = dct2(&img);
        assert!((d.get(0, 0) - 10.0 * (24.0f64).sqrt() / 2.0).abs() < 1e-9);
        let f = dft2(&img);
        assert!((f.get(0, 0) - Complex64::new(240.0, 0.0)).norm() < 1e-9);
        for v in 0..4 {
            for u in 0..6 {
                if (u, v) != (0, 0) {
                    assert!(d.get(u, v).abs() < 1e-9);
                    assert!(f.get(u, v).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn dct_first_coefficient_on_canonical_size() {
        let img = GrayImage::filled(144, 144, 3);
        let f = dct_features(&img, 1).unwrap();
        assert!((f.values()[0] - 216.0).abs() < 1e-9);
    }

    #[test]
    fn bad_k_and_empty() {
        let img = GrayImage::filled(3, 3, 1);
        assert!(matches!(dct_features(&img, 10), Err(Error::BadK { .. })));
        assert!(matches!(dft_features(&img, 10), Err(Error::BadK { .. })));
        assert_eq!(dft_features(&img, 0).unwrap().dim(), 0);
        assert_eq!(dct_features(&img, 9).unwrap().dim(), 9);
    }

    #[test]
    fn impulse_spectrum_is_flat() {
        let img = GrayImage::from_fn(5, 4, |x, y| u8::from((x, y) == (3, 2)));
        let f = dft2(&img);
        for c in f.values() {
            assert!((c.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn low_frequency_order_starts_at_dc() {
        let o = low_frequency_order(8, 8);
        assert_eq!(o[0], (0, 0));
        // radius 1: a = -1 first, then (0,-1), (0,1), (1,0)
        assert_eq!(&o[1..5], &[(7, 0), (0, 7), (0, 1), (1, 0)]);
    }
}
