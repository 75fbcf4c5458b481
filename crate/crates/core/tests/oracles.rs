// Optimized descriptors against direct-formula reference implementations.

mod common;

use std::f64::consts::PI;

use common::*;
use texture_ensemble::glcm::{glcm_feature_vector, glcm_matrix, Direction};
use texture_ensemble::lbp::{lbp_code_map, lbp_histogram, sample_neighbors, UniformTable};
use texture_ensemble::spectral::{
    dct2, dct_features, dft2, dft_features, low_frequency_order, zigzag,
};
use texture_ensemble::wld::{wld_histogram, WldQuantization};
use texture_ensemble::{GrayImage, LbpVariant, NeighborhoodSpec};

const TRANSFORM_TOL: f64 = 1e-9;

fn specs() -> Vec<NeighborhoodSpec> {
    let mut v = NeighborhoodSpec::standard_scales().to_vec();
    v.push(NeighborhoodSpec::new(12, 1.5).unwrap());
    v.push(NeighborhoodSpec::new(6, 2.0).unwrap());
    v
}

#[test]
fn uniform_table_matches_run_construction() {
    for p in [4, 6, 8, 12, 16, 24, 32] {
        assert_eq!(
            UniformTable::new(p).codes(),
            uniform_codes(p).as_slice(),
            "P = {p}"
        );
        assert_eq!(uniform_codes(p).len(), p * (p - 1) + 2);
    }
}

#[test]
fn neighbor_sampling_matches_trig_bilinear() {
    for seed in 0..5 {
        let img = random_image(16, 16, seed);
        for spec in specs() {
            for (x, y) in interior(&img, spec.radius) {
                let fast = sample_neighbors(&img, x, y, spec).unwrap();
                let slow = naive_neighbors(&img, x, y, spec.points, spec.radius);
                for (a, b) in fast.iter().zip(&slow) {
                    assert!((a - b).abs() < 1e-9, "spec {spec} at ({x},{y}): {a} vs {b}");
                }
            }
        }
    }
}

#[test]
fn lbp_codes_and_histograms_match_oracle() {
    for seed in 0..20 {
        let img = random_image(16, 16, 100 + seed);
        for spec in specs() {
            let (p, r) = (spec.points, spec.radius);
            assert_eq!(
                lbp_code_map(&img, spec).unwrap(),
                naive_lbp_codes(&img, p, r),
                "seed {seed} spec {spec}"
            );
            assert_eq!(
                lbp_histogram(&img, spec, LbpVariant::U2).unwrap().values(),
                naive_u2_histogram(&img, p, r).as_slice()
            );
            assert_eq!(
                lbp_histogram(&img, spec, LbpVariant::Riu2)
                    .unwrap()
                    .values(),
                naive_riu2_histogram(&img, p, r).as_slice()
            );
        }
    }
}

fn naive_wld_histogram(img: &GrayImage, p: usize, r: f64, ri: bool) -> Vec<f64> {
    let (eb, ob) = (6usize, 8usize);
    let angle = |h: f64, v: f64| {
        if h == 0.0 && v == 0.0 {
            0.0
        } else {
            (h.atan2(v) + PI).rem_euclid(2.0 * PI)
        }
    };
    let mut counts = vec![0u64; eb * ob];
    for (x, y) in interior(img, r) {
        let c = img.get(x, y) as f64;
        let g = naive_neighbors(img, x, y, p, r);
        let xi = g.iter().map(|&v| (v - c) / v.max(1.0)).sum::<f64>().atan();
        let theta = if ri {
            (0..p)
                .map(|i| {
                    angle(
                        g[(i + p / 2) % p] - g[i],
                        g[(i + 3 * p / 4) % p] - g[(i + p / 4) % p],
                    )
                })
                .fold(f64::INFINITY, f64::min)
        } else {
            let at = |dx: f64, dy: f64| bilinear(img, x as f64 + dx, y as f64 + dy);
            angle(at(-r, 0.0) - at(r, 0.0), at(0.0, r) - at(0.0, -r))
        };
        let t = ((theta / (2.0 * PI / ob as f64) + 0.5).floor() as usize) % ob;
        let e = ((xi * eb as f64 / PI + eb as f64 / 2.0).floor().max(0.0) as usize).min(eb - 1);
        counts[e * ob + t] += 1;
    }
    normalize(&counts)
}

#[test]
fn wld_histograms_match_oracle() {
    for seed in 0..10 {
        let img = random_image(16, 16, 300 + seed);
        for spec in NeighborhoodSpec::standard_scales() {
            for ri in [false, true] {
                let fast = wld_histogram(&img, spec, WldQuantization::default(), ri).unwrap();
                let slow = naive_wld_histogram(&img, spec.points, spec.radius, ri);
                assert_eq!(
                    fast.values(),
                    slow.as_slice(),
                    "seed {seed} spec {spec} ri {ri}"
                );
            }
        }
    }
}

#[test]
fn glcm_counts_match_double_loop() {
    for seed in 0..10 {
        let img = random_image(12, 12, 500 + seed);
        for levels in [2, 8, 16, 256] {
            for d in [1, 2, 5] {
                for dir in Direction::ALL {
                    let (dx, dy) = match dir {
                        Direction::Deg0 => (d as i64, 0),
                        Direction::Deg45 => (d as i64, -(d as i64)),
                        Direction::Deg90 => (0, -(d as i64)),
                        Direction::Deg135 => (-(d as i64), -(d as i64)),
                    };
                    let expected = naive_glcm_counts(&img, dx, dy, levels);
                    let total: u64 = expected.iter().sum();
                    let m = glcm_matrix(&img, d, dir, levels).unwrap();
                    let counts: Vec<u64> = m
                        .probs()
                        .iter()
                        .map(|p| (p * total as f64).round() as u64)
                        .collect();
                    assert_eq!(
                        counts, expected,
                        "seed {seed} levels {levels} d {d} {dir:?}"
                    );
                    assert_eq!(m.probs(), normalize(&expected).as_slice());
                }
            }
        }
    }
}

#[test]
fn glcm_quarter_turn_permutes_direction_blocks() {
    for seed in 0..5 {
        let img = random_image(20, 14, 700 + seed);
        let a = glcm_feature_vector(&img, 1, 16).unwrap();
        let b = glcm_feature_vector(&img.rotate90(), 1, 16).unwrap();
        let block = |v: &[f64], k: usize| v[k * 16..(k + 1) * 16].to_vec();
        // 0° <-> 90° and 45° <-> 135°
        for (k, j) in [(0, 2), (1, 3), (2, 0), (3, 1)] {
            assert_eq!(
                block(a.values(), k),
                block(b.values(), j),
                "seed {seed} block {k}"
            );
        }
    }
}

fn max_abs(v: impl Iterator<Item = f64>) -> f64 {
    v.fold(0.0, |m, x| m.max(x.abs()))
}

#[test]
fn dct_matches_direct_sum() {
    for (seed, (w, h)) in [
        (1u64, (8, 8)),
        (2, (5, 7)),
        (3, (8, 3)),
        (4, (1, 6)),
        (5, (7, 7)),
    ] {
        let img = random_image(w, h, 900 + seed);
        let fast = dct2(&img);
        let slow = naive_dct(&img);
        let scale = max_abs(slow.iter().copied());
        for (a, b) in fast.values().iter().zip(&slow) {
            assert!(
                rel_close(*a, *b, TRANSFORM_TOL, scale),
                "{w}x{h}: {a} vs {b}"
            );
        }
        // feature order is the zigzag over (row = v, col = u)
        let k = (w * h) as usize;
        let feats = dct_features(&img, k).unwrap();
        for (f, (v, u)) in feats.values().iter().zip(zigzag(h as usize, w as usize)) {
            assert!(rel_close(
                *f,
                slow[v * w as usize + u],
                TRANSFORM_TOL,
                scale
            ));
        }
    }
}

#[test]
fn dft_matches_direct_sum() {
    for (seed, (w, h)) in [
        (1u64, (8, 8)),
        (2, (5, 7)),
        (3, (6, 4)),
        (4, (1, 5)),
        (5, (7, 7)),
    ] {
        let img = random_image(w, h, 1000 + seed);
        let fast = dft2(&img);
        let slow = naive_dft(&img);
        let scale = max_abs(slow.iter().map(|(re, im)| re.hypot(*im)));
        for (a, &(re, im)) in fast.values().iter().zip(&slow) {
            assert!(
                rel_close(a.re, re, TRANSFORM_TOL, scale)
                    && rel_close(a.im, im, TRANSFORM_TOL, scale)
            );
        }
        let feats = dft_features(&img, (w * h) as usize).unwrap();
        for (f, (u, v)) in feats
            .values()
            .iter()
            .zip(low_frequency_order(w as usize, h as usize))
        {
            let (re, im) = slow[v * w as usize + u];
            assert!(rel_close(*f, re.hypot(im), TRANSFORM_TOL, scale));
        }
    }
}

#[test]
fn parseval_identities() {
    for seed in 0..5 {
        let img = random_image(12, 10, 1100 + seed);
        let energy: f64 = img.as_raw().iter().map(|&v| (v as f64).powi(2)).sum();
        let n = (12 * 10) as f64;
        let dft_energy: f64 = dft2(&img).values().iter().map(|c| c.norm_sqr()).sum();
        assert!(((dft_energy / n) - energy).abs() / energy < 1e-6);
        // the DCT normalization is half the orthonormal one in each axis pair
        let dct_energy: f64 = dct2(&img).values().iter().map(|c| c * c).sum();
        assert!((4.0 * dct_energy - energy).abs() / energy < 1e-6);
    }
}

#[test]
fn dft_magnitudes_ignore_circular_shift() {
    for seed in 0..5 {
        let img = random_image(16, 12, 1200 + seed);
        let shifted = GrayImage::from_fn(16, 12, |x, y| {
            img.get((x + 3 + seed as u32) % 16, (y + 7) % 12)
        });
        let a = dft_features(&img, 64).unwrap();
        let b = dft_features(&shifted, 64).unwrap();
        let scale = max_abs(a.values().iter().copied());
        for (p, q) in a.values().iter().zip(b.values()) {
            assert!(rel_close(*p, *q, TRANSFORM_TOL, scale));
        }
    }
}
