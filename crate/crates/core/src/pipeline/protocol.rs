//! End-to-end extract, search, train and evaluate workflow.

use std::collections::BTreeSet;

use super::features::extract_entries;
use super::manifest::{DatasetManifest, ManifestEntry};
use super::report::{EvalReport, Metrics};
use super::split::stratified_split;
use crate::error::Result;
use crate::imgio::CANONICAL_SIZE;
use crate::regions::DescriptorConfig;
use crate::svm::{grid_search, train_multiclass_with, GridResult, GridSpec, SvmModel, SvmParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolOptions {
    /// Fraction of each class used for training.
    pub train_ratio: f64,
    /// Images are resized to `working_size × working_size`.
    pub working_size: u32,
}

impl Default for ProtocolOptions {
    fn default() -> Self {
        Self {
            train_ratio: 0.8,
            working_size: CANONICAL_SIZE,
        }
    }
}

/// Grid-searches `(C, γ)` on the samples, then trains on all of them.
pub fn fit_with_search<S: AsRef<[f64]> + Sync, L: AsRef<str>>(
    samples: &[S],
    labels: &[L],
    grid: &GridSpec,
    seed: u64,
) -> Result<(SvmModel, GridResult)> {
    let best = grid_search(samples, labels, grid, seed)?;
    let params = SvmParams {
        c: best.c,
        gamma: best.gamma,
        solver: grid.solver,
    };
    let model = train_multiclass_with(samples, labels, &params)?;
    Ok((model, best))
}

/// Predicts every sample and scores against the given labels. Classes are
/// the union of the model's and the labels', sorted.
pub fn score<S: AsRef<[f64]>, L: AsRef<str>>(
    model: &SvmModel,
    samples: &[S],
    labels: &[L],
) -> Result<Metrics> {
    let classes: Vec<String> = model
        .classes()
        .iter()
        .cloned()
        .chain(labels.iter().map(|l| l.as_ref().to_string()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index = |name: &str| {
        classes
            .binary_search_by(|c| c.as_str().cmp(name))
            .expect("known class")
    };
    let truth: Vec<usize> = labels.iter().map(|l| index(l.as_ref())).collect();
    let predicted = samples
        .iter()
        .map(|s| model.predict(s.as_ref()).map(index))
        .collect::<Result<Vec<usize>>>()?;
    let mut m = Metrics::new(classes.len(), &truth, &predicted);
    m.classes = classes;
    Ok(m)
}

fn report(
    m: Metrics,
    config: String,
    model: &SvmModel,
    cv: Option<f64>,
    seed: Option<u64>,
    train_count: Option<usize>,
) -> EvalReport {
    EvalReport {
        classes: m.classes,
        confusion: m.confusion,
        accuracy: m.accuracy,
        precision: m.precision,
        recall: m.recall,
        config,
        c: model.c(),
        gamma: model.gamma(),
        cv_accuracy: cv,
        seed,
        train_count,
    }
}

/// Runs the protocol with default options (4:1 split, 144 × 144 images).
pub fn run_protocol(
    m: &DatasetManifest,
    cfg: &DescriptorConfig,
    grid: &GridSpec,
    seed: u64,
) -> Result<EvalReport> {
    run_protocol_with(m, cfg, grid, seed, &ProtocolOptions::default())
}

/// Splits the manifest, extracts `cfg` from every image, grid-searches on
/// the training split, trains the final model there and scores the test split.
pub fn run_protocol_with(
    m: &DatasetManifest,
    cfg: &DescriptorConfig,
    grid: &GridSpec,
    seed: u64,
    opts: &ProtocolOptions,
) -> Result<EvalReport> {
    let split = stratified_split(m, opts.train_ratio, seed)?;
    let train_x = extract_entries(&split.train, cfg, opts.working_size)?;
    let test_x = extract_entries(&split.test, cfg, opts.working_size)?;
    let labels = |v: &[ManifestEntry]| v.iter().map(|e| e.label.clone()).collect::<Vec<_>>();
    let (mut model, best) = fit_with_search(&train_x, &labels(&split.train), grid, seed)?;
    model.set_descriptor(Some(cfg.to_string()));
    let metrics = score(&model, &test_x, &labels(&split.test))?;
    Ok(report(
        metrics,
        cfg.to_string(),
        &model,
        Some(best.cv_accuracy),
        Some(seed),
        Some(split.train.len()),
    ))
}

/// Scores a trained model on every entry of a manifest.
pub fn evaluate_model(
    model: &SvmModel,
    m: &DatasetManifest,
    cfg: &DescriptorConfig,
    working_size: u32,
) -> Result<EvalReport> {
    let x = extract_entries(m.entries(), cfg, working_size)?;
    let labels: Vec<&str> = m.entries().iter().map(|e| e.label.as_str()).collect();
    let metrics = score(model, &x, &labels)?;
    Ok(report(metrics, cfg.to_string(), model, None, None, None))
}
