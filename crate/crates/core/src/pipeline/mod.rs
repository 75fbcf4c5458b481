//! Dataset manifests, splitting, batch extraction and evaluation.

pub mod features;
pub mod manifest;
pub mod protocol;
pub mod report;
pub mod split;
pub mod synth;

pub use features::{
    export_features, extract_entries, load_working_image, FeatureRow, FeatureTable,
};
pub use manifest::{DatasetManifest, ManifestEntry, SplitTag};
pub use protocol::{
    evaluate_model, fit_with_search, run_protocol, run_protocol_with, score, ProtocolOptions,
};
pub use report::{EvalReport, Metrics};
pub use split::{stratified_split, train_count, Split};
pub use synth::{synth_corpus, synth_image, write_synth_corpus, SynthOptions, SYNTH_CLASSES};
