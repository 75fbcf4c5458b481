//! Grayscale images: decoding, cropping and bilinear resizing.
//!
//! Every descriptor in the crate consumes a [`GrayImage`]. Color inputs are
//! reduced to luma with the BT.601 weights `0.299 R + 0.587 G + 0.114 B`,
//! rounded to the nearest integer.

use std::fs;
use std::io::Write;
use std::path::Path;

use image::{DynamicImage, ImageError, ImageReader};

use crate::error::{Error, Result};

/// Working size used by the classification pipeline.
pub const CANONICAL_SIZE: u32 = 144;

/// Row-major 8-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl GrayImage {
    /// Wraps a row-major buffer; its length must be `width * height`.
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::ZeroDimension);
        }
        if data.len() != width as usize * height as usize {
            return Err(Error::DimensionMismatch {
                expected: width as usize * height as usize,
                found: data.len(),
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    ///
    /// # Panics
    /// If either dimension is zero.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> u8) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be non-zero");
        let mut data = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    /// Constant image.
    pub fn filled(width: u32, height: u32, value: u8) -> Self {
        Self::from_fn(width, height, |_, _| value)
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn height(&self) -> u32 {
        self.height
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.data[y as usize * self.width as usize + x as usize]
    }

    /// Pixel access with signed coordinates, used by the sampling kernels.
    /// The caller guarantees the coordinates are in range.
    #[inline]
    pub(crate) fn at(&self, x: i64, y: i64) -> u8 {
        debug_assert!(x >= 0 && y >= 0 && x < self.width as i64 && y < self.height as i64);
        self.data[y as usize * self.width as usize + x as usize]
    }

    pub fn as_raw(&self) -> &[u8] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<u8> {
        self.data
    }

    pub fn row(&self, y: u32) -> &[u8] {
        let w = self.width as usize;
        &self.data[y as usize * w..(y as usize + 1) * w]
    }

    /// Rotates the image a quarter turn clockwise.
    pub fn rotate90(&self) -> Self {
        let (w, h) = (self.width, self.height);
        Self::from_fn(h, w, |x, y| self.get(y, h - 1 - x))
    }

    /// Rotates by `quarter_turns * 90` degrees clockwise.
    pub fn rotate_quarter_turns(&self, quarter_turns: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..quarter_turns % 4 {
            out = out.rotate90();
        }
        out
    }

    /// Dumps the image as binary PGM (P5).
    pub fn save_pgm(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut file = fs::File::create(path)?;
        write!(file, "P5\n{} {}\n255\n", self.width, self.height)?;
        file.write_all(&self.data)?;
        Ok(())
    }
}

/// Axis-aligned crop rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
}

impl Rect {
    pub fn new(x: u32, y: u32, w: u32, h: u32) -> Self {
        Self { x, y, w, h }
    }

    pub fn full(img: &GrayImage) -> Self {
        Self::new(0, 0, img.width(), img.height())
    }
}

/// Converts an RGB triple to luma with BT.601 weights.
#[inline]
pub fn luma(r: u8, g: u8, b: u8) -> u8 {
    let v = 0.299 * r as f64 + 0.587 * g as f64 + 0.114 * b as f64;
    v.round().clamp(0.0, 255.0) as u8
}

/// Decodes a BMP, PNG or PGM file into a grayscale image.
pub fn load_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    if !path.is_file() {
        return Err(Error::FileNotFound(path.to_path_buf()));
    }
    let reader = ImageReader::open(path)?
        .with_guessed_format()
        .map_err(Error::Io)?;
    let decoded = reader.decode().map_err(|e| match e {
        ImageError::Unsupported(u) => Error::UnsupportedFormat(format!("{}: {u}", path.display())),
        other => Error::CorruptImage(format!("{}: {other}", path.display())),
    })?;
    from_dynamic(decoded)
}

fn from_dynamic(img: DynamicImage) -> Result<GrayImage> {
    let (width, height) = (img.width(), img.height());
    let data = match img {
        DynamicImage::ImageLuma8(buf) => buf.into_raw(),
        DynamicImage::ImageLumaA8(buf) => buf.pixels().map(|p| p.0[0]).collect(),
        DynamicImage::ImageLuma16(_) | DynamicImage::ImageLumaA16(_) => img.to_luma8().into_raw(),
        other => other
            .to_rgb8()
            .pixels()
            .map(|p| luma(p.0[0], p.0[1], p.0[2]))
            .collect(),
    };
    GrayImage::new(width, height, data)
}

/// Copies the pixels inside `r`.
pub fn crop(img: &GrayImage, r: Rect) -> Result<GrayImage> {
    let fits = r.w >= 1
        && r.h >= 1
        && r.x.checked_add(r.w).is_some_and(|e| e <= img.width())
        && r.y.checked_add(r.h).is_some_and(|e| e <= img.height());
    if !fits {
        return Err(Error::OutOfBounds {
            x: r.x,
            y: r.y,
            w: r.w,
            h: r.h,
            width: img.width(),
            height: img.height(),
        });
    }
    let mut data = Vec::with_capacity(r.w as usize * r.h as usize);
    for y in r.y..r.y + r.h {
        data.extend_from_slice(&img.row(y)[r.x as usize..(r.x + r.w) as usize]);
    }
    GrayImage::new(r.w, r.h, data)
}

/// Bilinear resize with half-pixel-centered sampling and edge clamping.
pub fn resize(img: &GrayImage, width: u32, height: u32) -> Result<GrayImage> {
    if width == 0 || height == 0 {
        return Err(Error::ZeroDimension);
    }
    if width == img.width() && height == img.height() {
        return Ok(img.clone());
    }
    let xs = axis_samples(img.width(), width);
    let ys = axis_samples(img.height(), height);
    let mut data = Vec::with_capacity(width as usize * height as usize);
    for &(y0, y1, fy) in &ys {
        let (r0, r1) = (img.row(y0), img.row(y1));
        for &(x0, x1, fx) in &xs {
            let top =
                r0[x0 as usize] as f64 + fx * (r0[x1 as usize] as f64 - r0[x0 as usize] as f64);
            let bot =
                r1[x0 as usize] as f64 + fx * (r1[x1 as usize] as f64 - r1[x0 as usize] as f64);
            let v = top + fy * (bot - top);
            data.push(v.round().clamp(0.0, 255.0) as u8);
        }
    }
    GrayImage::new(width, height, data)
}

/// Source index pair and fraction for each destination coordinate.
fn axis_samples(src: u32, dst: u32) -> Vec<(u32, u32, f64)> {
    let scale = src as f64 / dst as f64;
    let max = (src - 1) as f64;
    (0..dst)
        .map(|d| {
            let s = ((d as f64 + 0.5) * scale - 0.5).clamp(0.0, max);
            let s0 = s.floor();
            let i0 = s0 as u32;
            let i1 = (i0 + 1).min(src - 1);
            (i0, i1, s - s0)
        })
        .collect()
}
