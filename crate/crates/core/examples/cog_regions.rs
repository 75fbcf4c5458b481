// Center-of-gravity quadrant split and composite descriptor strings.

use texture_ensemble::regions::{center_of_gravity, quadrant_rects};
use texture_ensemble::{expected_dimension, extract, DescriptorConfig, GrayImage};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // brighter toward the lower right, so the centroid moves off center
    let img = GrayImage::from_fn(144, 144, |x, y| {
        ((x + y) / 2 + ((x * 7 + y * 13) % 17)) as u8
    });
    let c = center_of_gravity(&img);
    println!("center of gravity ({:.2}, {:.2})", c.cx, c.cy);
    for (name, r) in ["TL", "TR", "BL", "BR"].iter().zip(quadrant_rects(&img, c)) {
        println!("  {name}: {}x{} at ({}, {})", r.w, r.h, r.x, r.y);
    }

    for name in [
        "riLBP@16,2",
        "cogriLBP@16,2",
        "cogriWeberLBP@16,2",
        "gcogWLDRI@8,1+24,3",
        "cogGLCM@1,16",
        "DFT@32",
    ] {
        let cfg: DescriptorConfig = name.parse()?;
        let f = extract(&img, &cfg)?;
        assert_eq!(f.dim(), expected_dimension(&cfg));
        println!("{:<22} {:>5} values", cfg.to_string(), f.dim());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
