// Differential excitation and orientation of the Weber local descriptor,
// per pixel and as the 6 x 8 joint histogram.

use texture_ensemble::wld::{
    differential_excitation, excitation_from_neighbors, orientation, quantize_excitation,
    quantize_orientation, raw_angle, wld_histogram, WldQuantization,
};
use texture_ensemble::{GrayImage, NeighborhoodSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let xi = excitation_from_neighbors(&[110.0; 8], 100.0);
    println!("center 100 in a ring of 110: xi = {xi:.6} rad");
    let theta = raw_angle(3.0, 4.0);
    println!(
        "dI_h = 3, dI_v = 4: theta' = {theta:.6} rad, orientation bin {}",
        quantize_orientation(theta, 8)
    );
    println!("excitation bin of xi = 0: {}", quantize_excitation(0.0, 6));

    let img = GrayImage::from_fn(40, 40, |x, y| {
        (128.0 + 60.0 * ((x as f64) * 0.7 + (y as f64) * 0.3).sin()) as u8
    });
    let spec = NeighborhoodSpec::new(8, 1.0)?;
    println!(
        "pixel (20,20): xi = {:.4}, theta' = {:.4}",
        differential_excitation(&img, 20, 20, spec)?,
        orientation(&img, 20, 20, spec)?
    );

    let q = WldQuantization::default();
    for ri in [false, true] {
        let h = wld_histogram(&img, spec, q, ri)?;
        let peak = h
            .values()
            .iter()
            .copied()
            .enumerate()
            .fold((0, 0.0), |b, (i, v)| if v > b.1 { (i, v) } else { b });
        println!(
            "{:<10} {} bins, peak at excitation {} orientation {} ({:.3})",
            h.descriptor(),
            h.dim(),
            peak.0 / q.orientation_bins,
            peak.0 % q.orientation_bins,
            peak.1
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
