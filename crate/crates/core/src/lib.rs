//! Texture descriptors and a texture classification pipeline.
//!
//! Descriptors: uniform and rotation-invariant LBP ([`lbp`]), the Weber
//! local descriptor and its rotation-invariant form ([`wld`]), GLCM Haralick
//! statistics ([`glcm`]) and low-frequency DCT / DFT coefficients
//! ([`spectral`]). [`regions`] composes them into multi-scale, optionally
//! center-of-gravity split ensembles named by a canonical string such as
//! `cogriWeberLBP@16,2`. [`svm`] holds an RBF one-vs-one SVM with grid
//! search, and [`pipeline`] ties both together over image manifests.

pub mod error;
pub mod feature;
pub mod glcm;
pub mod imgio;
pub mod lbp;
pub mod ledger;
mod neighborhood;
pub mod pipeline;
pub mod regions;
pub mod spectral;
pub mod svm;
pub mod wld;

pub use error::{Error, Result};
pub use feature::FeatureVector;
pub use imgio::{crop, load_image, resize, GrayImage, Rect};
pub use lbp::{LbpVariant, NeighborhoodSpec};
pub use regions::{expected_dimension, extract, DescriptorConfig};
pub use svm::{GridSpec, SvmModel};
