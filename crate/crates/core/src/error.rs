use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the descriptors, the classifier and the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),
    #[error("corrupt image: {0}")]
    CorruptImage(String),
    #[error("rectangle ({x},{y},{w},{h}) exceeds {width}x{height} image")]
    OutOfBounds {
        x: u32,
        y: u32,
        w: u32,
        h: u32,
        width: u32,
        height: u32,
    },
    #[error("zero image dimension")]
    ZeroDimension,
    #[error("neighborhood of radius {radius} around ({x},{y}) leaves the image")]
    BorderViolation { x: u32, y: u32, radius: f64 },
    #[error("image {width}x{height} too small, need at least {min_side} pixels per side")]
    ImageTooSmall {
        width: u32,
        height: u32,
        min_side: u32,
    },
    #[error("invalid neighborhood: {0}")]
    BadNeighborhood(String),
    #[error("gray level count {0} outside [2, 256]")]
    BadLevels(usize),
    #[error("co-occurrence distance must be at least 1")]
    BadDistance,
    #[error("requested {k} coefficients but only {capacity} available")]
    BadK { k: usize, capacity: usize },
    #[error("co-occurrence statistics are not finite")]
    DegenerateMatrix,
    #[error("center-of-gravity split gives a {width}x{height} quadrant, need {min_side} per side")]
    DegenerateSplit {
        width: u32,
        height: u32,
        min_side: u32,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("training data contains a single class")]
    SingleClass,
    #[error("invalid SVM parameter: {0}")]
    BadParameter(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("class `{label}` has {count} samples, at least 2 are required")]
    TooFewSamples { label: String, count: usize },
    #[error("invalid descriptor configuration `{0}`")]
    InvalidConfig(String),
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("failed to extract features from {path}: {source}")]
    Extraction {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
