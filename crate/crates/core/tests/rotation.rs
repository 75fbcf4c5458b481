// Rotation behavior of the LBP and WLD histograms.

mod common;

use common::{random_image, textured_image};
use proptest::prelude::*;
use texture_ensemble::lbp::lbp_histogram;
use texture_ensemble::wld::{wld_histogram, WldQuantization};
use texture_ensemble::{Error, GrayImage, LbpVariant, NeighborhoodSpec};

fn ri_histograms(img: &GrayImage, spec: NeighborhoodSpec) -> (Vec<f64>, Vec<f64>) {
    (
        lbp_histogram(img, spec, LbpVariant::Riu2)
            .unwrap()
            .into_values(),
        wld_histogram(img, spec, WldQuantization::default(), true)
            .unwrap()
            .into_values(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariant_histograms_survive_quarter_turns(
        w in 9u32..40,
        h in 9u32..40,
        seed in any::<u64>(),
        scale in 0usize..3,
        turns in 1u32..4,
    ) {
        let spec = NeighborhoodSpec::standard_scales()[scale];
        let img = random_image(w, h, seed);
        prop_assert_eq!(ri_histograms(&img, spec), ri_histograms(&img.rotate_quarter_turns(turns), spec));
    }
}

#[test]
fn oriented_variants_notice_rotation() {
    let spec = NeighborhoodSpec::new(8, 1.0).unwrap();
    let img = textured_image(48, 48, 4);
    let turned = img.rotate90();
    assert_ne!(
        lbp_histogram(&img, spec, LbpVariant::U2).unwrap(),
        lbp_histogram(&turned, spec, LbpVariant::U2).unwrap()
    );
    assert_ne!(
        wld_histogram(&img, spec, WldQuantization::default(), false).unwrap(),
        wld_histogram(&turned, spec, WldQuantization::default(), false).unwrap()
    );
}

#[test]
fn four_full_turns_are_identity() {
    let img = random_image(13, 7, 1);
    assert_eq!(img.rotate_quarter_turns(4), img);
    assert_eq!(img.rotate90().rotate90(), img.rotate_quarter_turns(2));
    assert_eq!((img.rotate90().width(), img.rotate90().height()), (7, 13));
}

#[test]
fn wldri_needs_quarter_symmetric_ring() {
    let img = random_image(16, 16, 2);
    let spec = NeighborhoodSpec::new(6, 1.0).unwrap();
    assert!(matches!(
        wld_histogram(&img, spec, WldQuantization::default(), true),
        Err(Error::BadNeighborhood(_))
    ));
    assert!(wld_histogram(&img, spec, WldQuantization::default(), false).is_ok());
}
