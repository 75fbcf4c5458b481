//! Gray-level co-occurrence matrices and Haralick statistics.
//!
//! Intensities are requantized to `levels` gray levels with
//! `floor(v * levels / 256)`. Each matrix counts pairs at the offset of the
//! requested direction and its negation, so it is symmetric, and is
//! normalized to unit mass.
//!
//! Statistics, with `p(i, j)` the normalized matrix, `p_x`/`p_y` its
//! marginals, `p_{x+y}(k)` and `p_{x-y}(k)` the sum and absolute-difference
//! distributions, and all logarithms base 2 with `0 log 0 = 0`:
//!
//! | # | name | definition |
//! |---|------|------------|
//! | 0 | energy | `Σ p²` |
//! | 1 | entropy | `-Σ p log p` |
//! | 2 | inertia | `Σ (i - j)² p` |
//! | 3 | inverse difference moment | `Σ p / (1 + (i - j)²)` |
//! | 4 | sum average | `Σ k p_{x+y}(k)` |
//! | 5 | sum of squares variance | `Σ (i - μ_x)² p` |
//! | 6 | sum entropy | `-Σ p_{x+y} log p_{x+y}` |
//! | 7 | difference average | `Σ k p_{x-y}(k)` |
//! | 8 | difference variance | `Σ (k - DA)² p_{x-y}(k)` |
//! | 9 | difference entropy | `-Σ p_{x-y} log p_{x-y}` |
//! | 10 | contrast | `Σ k² p_{x-y}(k)` |
//! | 11 | correlation | `Σ (i - μ_x)(j - μ_y) p / (σ_x σ_y)`, 0 when `σ_x σ_y = 0` |
//! | 12 | information measure of correlation 1 | `(HXY - HXY1) / max(HX, HY)`, 0 when the denominator is 0 |
//! | 13 | information measure of correlation 2 | `sqrt(1 - 2^(-2 (HXY2 - HXY)))` |
//! | 14 | cluster prominence | `Σ (i + j - μ_x - μ_y)⁴ p` |
//! | 15 | cluster shade | `Σ (i + j - μ_x - μ_y)³ p` |
//!
//! Inertia and contrast agree mathematically; they are evaluated from the
//! matrix and from the difference distribution respectively.

use crate::error::{Error, Result};
use crate::feature::FeatureVector;
use crate::imgio::GrayImage;

/// Number of statistics per direction.
pub const HARALICK_LEN: usize = 16;

/// Statistic names in output order.
pub const HARALICK_NAMES: [&str; HARALICK_LEN] = [
    "energy",
    "entropy",
    "inertia",
    "inverse_difference_moment",
    "sum_average",
    "sum_of_squares_variance",
    "sum_entropy",
    "difference_average",
    "difference_variance",
    "difference_entropy",
    "contrast",
    "correlation",
    "info_measure_correlation_1",
    "info_measure_correlation_2",
    "cluster_prominence",
    "cluster_shade",
];

/// Pair direction. Image y grows downward, so 45° points up-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Deg0,
    Deg45,
    Deg90,
    Deg135,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Deg0,
        Direction::Deg45,
        Direction::Deg90,
        Direction::Deg135,
    ];

    /// Pixel offset `(dx, dy)` at distance `d`.
    pub fn offset(self, d: u32) -> (i64, i64) {
        let d = d as i64;
        match self {
            Direction::Deg0 => (d, 0),
            Direction::Deg45 => (d, -d),
            Direction::Deg90 => (0, -d),
            Direction::Deg135 => (-d, -d),
        }
    }

    pub fn degrees(self) -> u32 {
        match self {
            Direction::Deg0 => 0,
            Direction::Deg45 => 45,
            Direction::Deg90 => 90,
            Direction::Deg135 => 135,
        }
    }
}

/// Normalized symmetric co-occurrence matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CooccurrenceMatrix {
    levels: usize,
    distance: u32,
    direction: Direction,
    probs: Vec<f64>,
}

impl CooccurrenceMatrix {
    /// Builds a matrix from symmetric raw counts.
    pub fn from_counts(
        counts: &[u64],
        levels: usize,
        distance: u32,
        direction: Direction,
    ) -> Result<Self> {
        if counts.len() != levels * levels {
            return Err(Error::DimensionMismatch {
                expected: levels * levels,
                found: counts.len(),
            });
        }
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::DegenerateMatrix);
        }
        let t = total as f64;
        Ok(Self {
            levels,
            distance,
            direction,
            probs: counts.iter().map(|&c| c as f64 / t).collect(),
        })
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn distance(&self) -> u32 {
        self.distance
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.probs[i * self.levels + j]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

fn validate(levels: usize, d: u32) -> Result<()> {
    if !(2..=256).contains(&levels) {
        return Err(Error::BadLevels(levels));
    }
    if d == 0 {
        return Err(Error::BadDistance);
    }
    Ok(())
}

/// `floor(v * levels / 256)` for every pixel.
pub fn requantize(img: &GrayImage, levels: usize) -> Vec<u16> {
    img.as_raw()
        .iter()
        .map(|&v| (v as usize * levels / 256) as u16)
        .collect()
}

/// Symmetric pair counts for one offset, `levels x levels`, row-major.
pub(crate) fn cooccurrence_counts(
    q: &[u16],
    width: usize,
    height: usize,
    levels: usize,
    dx: i64,
    dy: i64,
) -> Vec<u64> {
    let mut counts = vec![0u64; levels * levels];
    let x_lo = (-dx).max(0) as usize;
    let x_hi = (width as i64 - dx.max(0)).max(0) as usize;
    let y_lo = (-dy).max(0) as usize;
    let y_hi = (height as i64 - dy.max(0)).max(0) as usize;
    if x_lo >= x_hi || y_lo >= y_hi {
        return counts;
    }
    for y in y_lo..y_hi {
        let row = &q[y * width..(y + 1) * width];
        let other_y = (y as i64 + dy) as usize;
        let other = &q[other_y * width..(other_y + 1) * width];
        let shift = (x_lo as i64 + dx) as usize;
        for (&a, &b) in row[x_lo..x_hi].iter().zip(&other[shift..]) {
            counts[a as usize * levels + b as usize] += 1;
        }
    }
    // symmetrize: C + Cᵀ
    for i in 0..levels {
        for j in i..levels {
            let s = counts[i * levels + j] + counts[j * levels + i];
            counts[i * levels + j] = s;
            counts[j * levels + i] = s;
        }
    }
    counts
}

/// Normalized symmetric co-occurrence matrix at distance `d` along `direction`.
pub fn glcm_matrix(
    img: &GrayImage,
    d: u32,
    direction: Direction,
    levels: usize,
) -> Result<CooccurrenceMatrix> {
    validate(levels, d)?;
    let (dx, dy) = direction.offset(d);
    if dx.unsigned_abs() >= img.width() as u64 || dy.unsigned_abs() >= img.height() as u64 {
        let min_side = d + 1;
        return Err(Error::ImageTooSmall {
            width: img.width(),
            height: img.height(),
            min_side,
        });
    }
    let q = requantize(img, levels);
    let counts = cooccurrence_counts(
        &q,
        img.width() as usize,
        img.height() as usize,
        levels,
        dx,
        dy,
    );
    CooccurrenceMatrix::from_counts(&counts, levels, d, direction)
}

#[inline]
fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// The sixteen statistics in table order.
pub fn haralick_features(m: &CooccurrenceMatrix) -> Result<[f64; HARALICK_LEN]> {
    let n = m.levels();
    let mut px = vec![0.0; n];
    let mut py = vec![0.0; n];
    let mut p_sum = vec![0.0; 2 * n - 1];
    let mut p_diff = vec![0.0; n];

    let mut energy = 0.0;
    let mut entropy = 0.0;
    let mut inertia = 0.0;
    let mut idm = 0.0;
    for i in 0..n {
        for j in 0..n {
            let p = m.get(i, j);
            if p == 0.0 {
                continue;
            }
            let d = i as f64 - j as f64;
            px[i] += p;
            py[j] += p;
            p_sum[i + j] += p;
            p_diff[i.abs_diff(j)] += p;
            energy += p * p;
            entropy -= plogp(p);
            inertia += d * d * p;
            idm += p / (1.0 + d * d);
        }
    }

    let mu_x: f64 = px.iter().enumerate().map(|(i, p)| i as f64 * p).sum();
    let mu_y: f64 = py.iter().enumerate().map(|(j, p)| j as f64 * p).sum();
    let var_x: f64 = px
        .iter()
        .enumerate()
        .map(|(i, p)| (i as f64 - mu_x).powi(2) * p)
        .sum();
    let var_y: f64 = py
        .iter()
        .enumerate()
        .map(|(j, p)| (j as f64 - mu_y).powi(2) * p)
        .sum();

    let sum_average: f64 = p_sum.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
    let sum_entropy: f64 = -p_sum.iter().map(|&p| plogp(p)).sum::<f64>();
    let diff_average: f64 = p_diff.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
    let diff_variance: f64 = p_diff
        .iter()
        .enumerate()
        .map(|(k, p)| (k as f64 - diff_average).powi(2) * p)
        .sum();
    let diff_entropy: f64 = -p_diff.iter().map(|&p| plogp(p)).sum::<f64>();
    let contrast: f64 = p_diff
        .iter()
        .enumerate()
        .map(|(k, p)| (k * k) as f64 * p)
        .sum();

    let hx: f64 = -px.iter().map(|&p| plogp(p)).sum::<f64>();
    let hy: f64 = -py.iter().map(|&p| plogp(p)).sum::<f64>();
    let mut covariance = 0.0;
    let mut hxy1 = 0.0;
    let mut hxy2 = 0.0;
    let mut prominence = 0.0;
    let mut shade = 0.0;
    for (i, &pi) in px.iter().enumerate() {
        for (j, &pj) in py.iter().enumerate() {
            let q = pi * pj;
            if q > 0.0 {
                hxy2 -= q * q.log2();
            }
            let p = m.get(i, j);
            if p == 0.0 {
                continue;
            }
            covariance += (i as f64 - mu_x) * (j as f64 - mu_y) * p;
            hxy1 -= p * q.log2();
            let s = i as f64 + j as f64 - mu_x - mu_y;
            prominence += s.powi(4) * p;
            shade += s.powi(3) * p;
        }
    }
    let sigma = (var_x * var_y).sqrt();
    let correlation = if sigma > 0.0 { covariance / sigma } else { 0.0 };
    let h_max = hx.max(hy);
    let imc1 = if h_max > 0.0 {
        (entropy - hxy1) / h_max
    } else {
        0.0
    };
    let imc2 = (1.0 - (-2.0 * (hxy2 - entropy)).exp2()).max(0.0).sqrt();

    let mut out = [
        energy,
        entropy,
        inertia,
        idm,
        sum_average,
        var_x,
        sum_entropy,
        diff_average,
        diff_variance,
        diff_entropy,
        contrast,
        correlation,
        imc1,
        imc2,
        prominence,
        shade,
    ];
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateMatrix);
    }
    // entropies of a single-cell matrix come out as -0
    for v in &mut out {
        *v += 0.0;
    }
    Ok(out)
}

pub fn descriptor_tag(d: u32, levels: usize) -> String {
    format!("GLCM@{d},{levels}")
}

/// Haralick statistics for 0°, 45°, 90° and 135°, concatenated (64 values).
pub fn glcm_feature_vector(img: &GrayImage, d: u32, levels: usize) -> Result<FeatureVector> {
    let mut values = Vec::with_capacity(4 * HARALICK_LEN);
    for dir in Direction::ALL {
        let m = glcm_matrix(img, d, dir, levels)?;
        values.extend_from_slice(&haralick_features(&m)?);
    }
    Ok(FeatureVector::new(values, descriptor_tag(d, levels)))
}
