//! Local binary patterns at arbitrary `(P, R)`.
//!
//! Bit `p` of a code is set when neighbor `p` is at least as bright as the
//! center (`sign(0) = 1`), with weight `2^p`. Neighbors start on the positive
//! x-axis and advance with increasing angle.
//!
//! Two histogram layouts are provided:
//!
//! * [`LbpVariant::U2`]: one bin per uniform code (at most two circular
//!   transitions), in ascending numeric order, plus a final shared bin for
//!   all non-uniform codes. `P(P-1) + 3` bins.
//! * [`LbpVariant::Riu2`]: uniform codes binned by their number of set bits,
//!   non-uniform codes in bin `P + 1`. `P + 2` bins.

use crate::error::Result;
use crate::feature::FeatureVector;
use crate::imgio::GrayImage;
use crate::neighborhood::Sampler;

pub use crate::neighborhood::{sample_neighbors, NeighborhoodSpec};

/// Histogram layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LbpVariant {
    U2,
    Riu2,
}

impl LbpVariant {
    pub fn histogram_len(self, points: usize) -> usize {
        match self {
            LbpVariant::U2 => points * (points - 1) + 3,
            LbpVariant::Riu2 => points + 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LbpVariant::U2 => "LBP",
            LbpVariant::Riu2 => "riLBP",
        }
    }
}

#[inline]
fn mask(points: usize) -> u64 {
    (1u64 << points) - 1
}

/// Thresholds the neighbors against the center.
pub fn lbp_code(neighbors: &[f64], center: f64) -> u32 {
    neighbors.iter().enumerate().fold(
        0u32,
        |code, (p, &g)| if g >= center { code | (1 << p) } else { code },
    )
}

#[inline]
fn rotate_right(code: u64, points: usize) -> u64 {
    ((code >> 1) | ((code & 1) << (points - 1))) & mask(points)
}

/// Smallest value among the `P` circular rotations of `code`.
pub fn min_rotation(code: u32, points: usize) -> u32 {
    let mut c = code as u64 & mask(points);
    let mut best = c;
    for _ in 1..points {
        c = rotate_right(c, points);
        best = best.min(c);
    }
    best as u32
}

/// Number of circular 0/1 transitions.
pub fn uniformity(code: u32, points: usize) -> u32 {
    let c = code as u64 & mask(points);
    (c ^ rotate_right(c, points)).count_ones()
}

/// Rotation-invariant uniform bin in `[0, P + 1]`.
pub fn riu2_bin(code: u32, points: usize) -> usize {
    if uniformity(code, points) <= 2 {
        code.count_ones() as usize
    } else {
        points + 1
    }
}

/// Sorted table of the `P(P-1) + 2` uniform codes.
#[derive(Debug, Clone)]
pub struct UniformTable {
    points: usize,
    codes: Vec<u32>,
}

impl UniformTable {
    pub fn new(points: usize) -> Self {
        let full = mask(points);
        let mut codes = vec![0u32, full as u32];
        for run in 1..points {
            let base = (1u64 << run) - 1;
            for shift in 0..points {
                let rotated = ((base << shift) | (base >> (points - shift))) & full;
                codes.push(rotated as u32);
            }
        }
        codes.sort_unstable();
        codes.dedup();
        debug_assert_eq!(codes.len(), points * (points - 1) + 2);
        Self { points, codes }
    }

    pub fn codes(&self) -> &[u32] {
        &self.codes
    }

    /// Bin of `code`; non-uniform codes share the last bin.
    pub fn bin(&self, code: u32) -> usize {
        self.codes.binary_search(&code).unwrap_or(self.codes.len())
    }

    pub fn bins(&self) -> usize {
        self.points * (self.points - 1) + 3
    }
}

/// Maps codes to histogram bins for one variant.
#[derive(Debug, Clone)]
enum Binning {
    U2(UniformTable),
    Riu2(usize),
}

impl Binning {
    fn new(variant: LbpVariant, points: usize) -> Self {
        match variant {
            LbpVariant::U2 => Binning::U2(UniformTable::new(points)),
            LbpVariant::Riu2 => Binning::Riu2(points),
        }
    }

    #[inline]
    fn bin(&self, code: u32) -> usize {
        match self {
            Binning::U2(table) => table.bin(code),
            Binning::Riu2(points) => riu2_bin(code, *points),
        }
    }
}

pub fn descriptor_tag(variant: LbpVariant, spec: NeighborhoodSpec) -> String {
    format!("{}@{}", variant.name(), spec)
}

/// Raw bin counts over every interior center.
pub(crate) fn lbp_counts(
    img: &GrayImage,
    spec: NeighborhoodSpec,
    variant: LbpVariant,
) -> Result<Vec<u64>> {
    let sampler = Sampler::new(spec)?;
    sampler.check_image(img)?;
    let binning = Binning::new(variant, spec.points);
    let mut counts = vec![0u64; variant.histogram_len(spec.points)];
    let mut neighbors = vec![0.0; spec.points];
    for (x, y) in sampler.centers(img) {
        sampler.sample_into(img, x, y, &mut neighbors);
        let code = lbp_code(&neighbors, img.get(x, y) as f64);
        counts[binning.bin(code)] += 1;
    }
    Ok(counts)
}

/// L1-normalized LBP histogram over all centers at least `ceil(R)` pixels
/// from the border.
pub fn lbp_histogram(
    img: &GrayImage,
    spec: NeighborhoodSpec,
    variant: LbpVariant,
) -> Result<FeatureVector> {
    let counts = lbp_counts(img, spec, variant)?;
    Ok(FeatureVector::from_counts(
        &counts,
        descriptor_tag(variant, spec),
    ))
}

/// Per-pixel codes for the interior region, row-major, useful for
/// visualising the operator. The result is `(w - 2m) x (h - 2m)`.
pub fn lbp_code_map(img: &GrayImage, spec: NeighborhoodSpec) -> Result<Vec<u32>> {
    let sampler = Sampler::new(spec)?;
    sampler.check_image(img)?;
    let mut neighbors = vec![0.0; spec.points];
    Ok(sampler
        .centers(img)
        .map(|(x, y)| {
            sampler.sample_into(img, x, y, &mut neighbors);
            lbp_code(&neighbors, img.get(x, y) as f64)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;

    #[test]
    fn code_examples() {
        assert_eq!(lbp_code(&[5.0; 8], 5.0), 255);
        assert_eq!(lbp_code(&[1.0; 8], 5.0), 0);
        let code = lbp_code(&[6.0, 2.0, 7.0, 5.0, 1.0, 3.0, 9.0, 4.0], 5.0);
        assert_eq!(code, 0b0100_1101);
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(min_rotation(0, 8), 0);
        assert_eq!(min_rotation(0b1000_0000, 8), 1);
        assert_eq!(min_rotation(0b0000_0101, 8), 5);
        assert_eq!(min_rotation(0b1011_0100, 8), 0b0010_1101);
    }

    #[test]
    fn uniformity_examples() {
        assert_eq!(uniformity(0, 8), 0);
        assert_eq!(uniformity(255, 8), 0);
        assert_eq!(uniformity(0b0000_1111, 8), 2);
        assert_eq!(uniformity(0b0000_0101, 8), 4);
    }

    #[test]
    fn riu2_examples() {
        assert_eq!(riu2_bin(255, 8), 8);
        assert_eq!(riu2_bin(0, 8), 0);
        assert_eq!(riu2_bin(0b0000_0101, 8), 9);
        assert_eq!(riu2_bin((1 << 24) - 1, 24), 24);
    }

    #[test]
    fn uniform_table_sizes() {
        for p in [4, 8, 16, 24, 32] {
            let t = UniformTable::new(p);
            assert_eq!(t.codes().len(), p * (p - 1) + 2);
            assert_eq!(t.bins(), LbpVariant::U2.histogram_len(p));
        }
        let t8 = UniformTable::new(8);
        assert_eq!(t8.bin(0), 0);
        assert_eq!(t8.bin(1), 1);
        assert_eq!(t8.bin(255), 57);
        assert_eq!(t8.bin(0b0000_0101), 58);
    }

    #[test]
    fn histogram_dimensions() {
        let img = GrayImage::from_fn(20, 20, |x, y| ((x * 13 + y * 7) % 256) as u8);
        for (spec, u2, riu2) in NeighborhoodSpec::standard_scales()
            .into_iter()
            .zip([59, 243, 555])
            .zip([10, 18, 26])
            .map(|((s, a), b)| (s, a, b))
        {
            assert_eq!(lbp_histogram(&img, spec, LbpVariant::U2).unwrap().dim(), u2);
            assert_eq!(
                lbp_histogram(&img, spec, LbpVariant::Riu2).unwrap().dim(),
                riu2
            );
        }
    }

    #[test]
    fn constant_image_lands_in_all_ones_bin() {
        let img = GrayImage::filled(12, 12, 77);
        let spec = NeighborhoodSpec::new(8, 1.0).unwrap();
        let h = lbp_histogram(&img, spec, LbpVariant::Riu2).unwrap();
        assert_eq!(h.values()[8], 1.0);
        let spec = NeighborhoodSpec::new(16, 2.0).unwrap();
        let h = lbp_histogram(&img, spec, LbpVariant::Riu2).unwrap();
        assert_eq!(h.values()[16], 1.0);
    }

    #[test]
    fn small_image_rejected() {
        let img = GrayImage::filled(4, 4, 1);
        let spec = NeighborhoodSpec::new(16, 2.0).unwrap();
        assert!(matches!(
            lbp_histogram(&img, spec, LbpVariant::U2),
            Err(Error::ImageTooSmall { .. })
        ));
    }

    #[test]
    fn sample_neighbors_examples() {
        let img = GrayImage::filled(9, 9, 77);
        for spec in NeighborhoodSpec::standard_scales() {
            assert_eq!(
                sample_neighbors(&img, 4, 4, spec).unwrap(),
                vec![77.0; spec.points]
            );
        }
        let img = GrayImage::from_fn(3, 3, |x, y| (10 * y + x) as u8);
        let s = sample_neighbors(&img, 1, 1, NeighborhoodSpec::new(8, 1.0).unwrap()).unwrap();
        assert_eq!([s[0], s[2], s[4], s[6]], [12.0, 21.0, 10.0, 1.0]);
        // diagonal at (1 + √½, 1 + √½): direct bilinear evaluation
        let f = std::f64::consts::FRAC_1_SQRT_2;
        let expect = (1.0 - f) * (1.0 - f) * 11.0
            + f * (1.0 - f) * 12.0
            + (1.0 - f) * f * 21.0
            + f * f * 22.0;
        assert!((s[1] - expect).abs() < 1e-12);
        assert!(matches!(
            sample_neighbors(&img, 0, 0, NeighborhoodSpec::new(8, 1.0).unwrap()),
            Err(Error::BorderViolation { .. })
        ));
    }

    proptest! {
        #[test]
        fn min_rotation_idempotent(code in 0u32..(1 << 16), p in prop::sample::select(vec![8usize, 16])) {
            let c = code & ((1u32 << p) - 1);
            let m = min_rotation(c, p);
            prop_assert_eq!(min_rotation(m, p), m);
            prop_assert!(m <= c);
            prop_assert_eq!(uniformity(m, p), uniformity(c, p));
        }

        #[test]
        fn histogram_is_normalized(seed in any::<u64>()) {
            let mut state = seed;
            let img = GrayImage::from_fn(14, 11, |_, _| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 56) as u8
            });
            for spec in NeighborhoodSpec::standard_scales() {
                for v in [LbpVariant::U2, LbpVariant::Riu2] {
                    let h = lbp_histogram(&img, spec, v).unwrap();
                    let s: f64 = h.values().iter().sum();
                    prop_assert!((s - 1.0).abs() < 1e-9);
                }
            }
        }
    }
}
