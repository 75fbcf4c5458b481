// Direct-formula reference implementations used by the integration tests.
// They share no code with the library beyond the image type.

#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use texture_ensemble::GrayImage;

pub fn random_image(w: u32, h: u32, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..w * h).map(|_| rng.random::<u8>()).collect();
    GrayImage::new(w, h, data).unwrap()
}

/// Smooth random texture, so that neighboring pixels are correlated.
pub fn textured_image(w: u32, h: u32, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let waves: Vec<(f64, f64, f64, f64)> = (0..4)
        .map(|_| {
            (
                rng.random_range(0.05..0.9),
                rng.random_range(0.05..0.9),
                rng.random_range(0.0..2.0 * PI),
                rng.random_range(10.0..40.0),
            )
        })
        .collect();
    let data = (0..w * h)
        .map(|i| {
            let (x, y) = ((i % w) as f64, (i / w) as f64);
            let v: f64 = waves
                .iter()
                .map(|(a, b, p, amp)| amp * (a * x + b * y + p).sin())
                .sum();
            (128.0 + v + rng.random_range(-8.0..8.0))
                .round()
                .clamp(0.0, 255.0) as u8
        })
        .collect();
    GrayImage::new(w, h, data).unwrap()
}

fn snap(v: f64) -> f64 {
    if (v - v.round()).abs() < 1e-9 {
        v.round()
    } else {
        v
    }
}

/// Bilinear interpolation written as two nested lerps. Pixels with a zero
/// interpolation weight are never read.
pub fn bilinear(img: &GrayImage, x: f64, y: f64) -> f64 {
    let (x0, y0) = (x.floor(), y.floor());
    let (fx, fy) = (x - x0, y - y0);
    let px = |xx: f64, yy: f64| img.get(xx as u32, yy as u32) as f64;
    let row = |yy: f64| {
        if fx == 0.0 {
            px(x0, yy)
        } else {
            px(x0, yy) + fx * (px(x0 + 1.0, yy) - px(x0, yy))
        }
    };
    if fy == 0.0 {
        row(y0)
    } else {
        row(y0) + fy * (row(y0 + 1.0) - row(y0))
    }
}

/// Neighbor intensities with positions from cos/sin evaluated per point.
pub fn naive_neighbors(img: &GrayImage, xc: u32, yc: u32, p: usize, r: f64) -> Vec<f64> {
    (0..p)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / p as f64;
            let x = snap(xc as f64 + r * a.cos());
            let y = snap(yc as f64 + r * a.sin());
            bilinear(img, x, y)
        })
        .collect()
}

pub fn interior(img: &GrayImage, r: f64) -> Vec<(u32, u32)> {
    let m = r.ceil() as u32;
    (m..img.height() - m)
        .flat_map(|y| (m..img.width() - m).map(move |x| (x, y)))
        .collect()
}

pub fn naive_lbp_codes(img: &GrayImage, p: usize, r: f64) -> Vec<u32> {
    interior(img, r)
        .into_iter()
        .map(|(x, y)| {
            let c = img.get(x, y) as f64;
            naive_neighbors(img, x, y, p, r)
                .iter()
                .enumerate()
                .map(|(i, &g)| if g - c >= 0.0 { 1u32 << i } else { 0 })
                .sum()
        })
        .collect()
}

fn bit(code: u32, i: usize) -> u32 {
    (code >> i) & 1
}

pub fn transitions(code: u32, p: usize) -> usize {
    (0..p)
        .filter(|&i| bit(code, i) != bit(code, (i + 1) % p))
        .count()
}

pub fn ones(code: u32, p: usize) -> usize {
    (0..p).filter(|&i| bit(code, i) == 1).count()
}

/// Uniform codes built from their run structure, sorted ascending.
pub fn uniform_codes(p: usize) -> Vec<u32> {
    let full = (1u64 << p) - 1;
    let rotl = |c: u64, s: usize| ((c << s) | (c >> (p - s))) & full;
    let mut codes = vec![0, full];
    for len in 1..p {
        let run = (1u64 << len) - 1;
        codes.push(run);
        codes.extend((1..p).map(|s| rotl(run, s)));
    }
    codes.sort_unstable();
    codes.dedup();
    codes.into_iter().map(|c| c as u32).collect()
}

pub fn normalize(counts: &[u64]) -> Vec<f64> {
    let t: u64 = counts.iter().sum();
    counts.iter().map(|&c| c as f64 / t as f64).collect()
}

pub fn naive_u2_histogram(img: &GrayImage, p: usize, r: f64) -> Vec<f64> {
    let table = uniform_codes(p);
    let mut counts = vec![0u64; table.len() + 1];
    for code in naive_lbp_codes(img, p, r) {
        match table.iter().position(|&u| u == code) {
            Some(i) => counts[i] += 1,
            None => counts[table.len()] += 1,
        }
    }
    normalize(&counts)
}

pub fn naive_riu2_histogram(img: &GrayImage, p: usize, r: f64) -> Vec<f64> {
    let mut counts = vec![0u64; p + 2];
    for code in naive_lbp_codes(img, p, r) {
        let bin = if transitions(code, p) <= 2 {
            ones(code, p)
        } else {
            p + 1
        };
        counts[bin] += 1;
    }
    normalize(&counts)
}

/// Symmetric co-occurrence counts by visiting every pixel pair.
pub fn naive_glcm_counts(img: &GrayImage, dx: i64, dy: i64, levels: usize) -> Vec<u64> {
    let q = |x: i64, y: i64| img.get(x as u32, y as u32) as usize * levels / 256;
    let mut counts = vec![0u64; levels * levels];
    for y in 0..img.height() as i64 {
        for x in 0..img.width() as i64 {
            let (x2, y2) = (x + dx, y + dy);
            if x2 < 0 || y2 < 0 || x2 >= img.width() as i64 || y2 >= img.height() as i64 {
                continue;
            }
            let (a, b) = (q(x, y), q(x2, y2));
            counts[a * levels + b] += 1;
            counts[b * levels + a] += 1;
        }
    }
    counts
}

/// Direct quadruple-sum DCT, row-major with `v` as the row.
pub fn naive_dct(img: &GrayImage) -> Vec<f64> {
    let (w, h) = (img.width() as usize, img.height() as usize);
    let alpha = |k: usize| if k == 0 { 1.0 / 2f64.sqrt() } else { 1.0 };
    let mut out = vec![0.0; w * h];
    for v in 0..h {
        for u in 0..w {
            let mut s = 0.0;
            for y in 0..h {
                for x in 0..w {
                    s += img.get(x as u32, y as u32) as f64
                        * ((2 * x + 1) as f64 * u as f64 * PI / (2 * w) as f64).cos()
                        * ((2 * y + 1) as f64 * v as f64 * PI / (2 * h) as f64).cos();
                }
            }
            out[v * w + u] = alpha(u) * alpha(v) * s / ((w * h) as f64).sqrt();
        }
    }
    out
}

/// Direct quadruple-sum DFT as `(re, im)`, row-major with `v` as the row.
pub fn naive_dft(img: &GrayImage) -> Vec<(f64, f64)> {
    let (w, h) = (img.width() as usize, img.height() as usize);
    let mut out = vec![(0.0, 0.0); w * h];
    for v in 0..h {
        for u in 0..w {
            let (mut re, mut im) = (0.0, 0.0);
            for y in 0..h {
                for x in 0..w {
                    let f = img.get(x as u32, y as u32) as f64;
                    let phase = -2.0 * PI * ((u * x) as f64 / w as f64 + (v * y) as f64 / h as f64);
                    re += f * phase.cos();
                    im += f * phase.sin();
                }
            }
            out[v * w + u] = (re, im);
        }
    }
    out
}

/// `|a - b| ≤ tol · max(|a|, |b|, scale)`; `scale` absorbs values that
/// should be zero but carry rounding from large sums.
pub fn rel_close(a: f64, b: f64, tol: f64, scale: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(scale)
}
