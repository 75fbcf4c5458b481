// Low-frequency DCT and DFT coefficient features.

use texture_ensemble::spectral::{dct2, dct_features, dft_features, zigzag};
use texture_ensemble::GrayImage;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("zigzag 3x3: {:?}", zigzag(3, 3));

    let img = GrayImage::from_fn(16, 16, |x, y| {
        (100.0 + 50.0 * (x as f64 * 0.8).cos() + 20.0 * (y as f64 * 0.4).sin()) as u8
    });
    let grid = dct2(&img);
    println!("DC coefficient {:.3}", grid.get(0, 0));

    let dct = dct_features(&img, 10)?;
    println!(
        "{}: {:?}",
        dct.descriptor(),
        dct.values()
            .iter()
            .map(|v| format!("{v:.1}"))
            .collect::<Vec<_>>()
    );

    // DFT magnitudes ignore circular shifts
    let shifted = GrayImage::from_fn(16, 16, |x, y| img.get((x + 5) % 16, (y + 3) % 16));
    let a = dft_features(&img, 10)?;
    let b = dft_features(&shifted, 10)?;
    let diff = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max);
    println!(
        "{}: largest change under a circular shift {diff:.2e}",
        a.descriptor()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
