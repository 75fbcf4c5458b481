// Gray-level co-occurrence matrices in four directions and their sixteen
// Haralick statistics.

use texture_ensemble::glcm::{
    glcm_feature_vector, glcm_matrix, haralick_features, Direction, HARALICK_NAMES,
};
use texture_ensemble::GrayImage;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // vertical stripes two pixels wide
    let img = GrayImage::from_fn(32, 32, |x, _| if (x / 2) % 2 == 0 { 40 } else { 200 });

    println!(
        "{:<30} {:>10} {:>10} {:>10} {:>10}",
        "statistic", "0", "45", "90", "135"
    );
    let stats: Vec<[f64; 16]> = Direction::ALL
        .iter()
        .map(|&d| haralick_features(&glcm_matrix(&img, 1, d, 16)?))
        .collect::<Result<_, _>>()?;
    for (i, name) in HARALICK_NAMES.iter().enumerate() {
        print!("{name:<30}");
        for s in &stats {
            print!(" {:>10.4}", s[i]);
        }
        println!();
    }

    let v = glcm_feature_vector(&img, 1, 16)?;
    println!("{}: {} values", v.descriptor(), v.dim());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
