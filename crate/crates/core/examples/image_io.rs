// Loading, cropping and resizing grayscale images.

use texture_ensemble::{crop, load_image, resize, GrayImage, Rect};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("ramp.pgm");
    GrayImage::from_fn(60, 40, |x, y| (x * 3 + y) as u8).save_pgm(&path)?;

    let img = load_image(&path)?;
    println!(
        "loaded {}x{} from {}",
        img.width(),
        img.height(),
        path.display()
    );

    let part = crop(&img, Rect::new(10, 5, 20, 20))?;
    println!("crop (10,5,20,20): corner value {}", part.get(0, 0));

    let work = resize(&img, 144, 144)?;
    println!(
        "resized to {}x{}, corners {} and {}",
        work.width(),
        work.height(),
        work.get(0, 0),
        work.get(143, 143)
    );

    match load_image(dir.path().join("missing.png")) {
        Err(e) => println!("missing file: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
