// Uniform (u2) and rotation-invariant (riu2) LBP histograms at the three
// standard neighborhoods, and how they react to a quarter turn.

use texture_ensemble::lbp::{lbp_code, lbp_histogram, sample_neighbors, UniformTable};
use texture_ensemble::{GrayImage, LbpVariant, NeighborhoodSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // a diagonal ramp with a bright disc in one corner
    let img = GrayImage::from_fn(48, 48, |x, y| {
        let disc = (x as i32 - 12).pow(2) + (y as i32 - 14).pow(2) < 64;
        if disc {
            230
        } else {
            ((x * 3 + y * 2) % 256) as u8
        }
    });

    let spec = NeighborhoodSpec::new(8, 1.0)?;
    let ring = sample_neighbors(&img, 20, 20, spec)?;
    let code = lbp_code(&ring, img.get(20, 20) as f64);
    println!("neighbors of (20,20): {ring:?}");
    println!(
        "code {code:#010b}, u2 bin {}",
        UniformTable::new(8).bin(code)
    );

    let turned = img.rotate90();
    for spec in NeighborhoodSpec::standard_scales() {
        for variant in [LbpVariant::U2, LbpVariant::Riu2] {
            let h = lbp_histogram(&img, spec, variant)?;
            let r = lbp_histogram(&turned, spec, variant)?;
            let moved = h
                .values()
                .iter()
                .zip(r.values())
                .filter(|(a, b)| a != b)
                .count();
            println!(
                "{:<12} {:>3} bins, {:>3} change under a quarter turn",
                h.descriptor(),
                h.dim(),
                moved
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
