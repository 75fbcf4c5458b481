//! One-vs-one multi-class decomposition.
//!
//! Classes are kept in sorted order. The binary model for the pair `(a, b)`,
//! `a < b`, treats class `a` as `+1`. Prediction counts one vote per pair;
//! ties go to the class with the largest summed `|f|` over the votes it won,
//! then to the lowest class index.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::smo::{self, FeatureKernel, Kernel, SolverOptions};
use super::{check_samples, BinaryModel, SvmParams};
use crate::error::{Error, Result};

/// Trained one-vs-one classifier.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmModel {
    pub(crate) classes: Vec<String>,
    pub(crate) pairs: Vec<(usize, usize)>,
    pub(crate) binaries: Vec<BinaryModel>,
    pub(crate) trained_dim: usize,
    pub(crate) c: f64,
    pub(crate) gamma: f64,
    pub(crate) descriptor: Option<String>,
}

/// Binary solution over global sample indices.
#[derive(Debug, Clone)]
pub(crate) struct PairFit {
    pub a: usize,
    pub b: usize,
    pub sv: Vec<usize>,
    pub coef: Vec<f64>,
    pub rho: f64,
}

/// Sorted class names and the class index of every label.
pub(crate) fn index_labels<L: AsRef<str>>(labels: &[L]) -> (Vec<String>, Vec<usize>) {
    let classes: Vec<String> = labels
        .iter()
        .map(|l| l.as_ref().to_string())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let class_of = labels
        .iter()
        .map(|l| {
            classes
                .binary_search_by(|c| c.as_str().cmp(l.as_ref()))
                .expect("label present")
        })
        .collect();
    (classes, class_of)
}

pub(crate) fn class_pairs(n_classes: usize) -> Vec<(usize, usize)> {
    (0..n_classes)
        .flat_map(|a| (a + 1..n_classes).map(move |b| (a, b)))
        .collect()
}

/// Fits every class pair on the training indices `train`.
pub(crate) fn fit_pairs<K: Kernel + Sync>(
    kernel: &K,
    train: &[usize],
    class_of: &[usize],
    n_classes: usize,
    c: f64,
    opts: &SolverOptions,
) -> Vec<PairFit> {
    class_pairs(n_classes)
        .into_par_iter()
        .map(|(a, b)| {
            let idx: Vec<usize> = train
                .iter()
                .copied()
                .filter(|&t| class_of[t] == a || class_of[t] == b)
                .collect();
            let y: Vec<f64> = idx
                .iter()
                .map(|&t| if class_of[t] == a { 1.0 } else { -1.0 })
                .collect();
            let sol = smo::solve(kernel, &idx, &y, c, opts);
            let (sv, coef) = sol
                .alpha
                .iter()
                .enumerate()
                .filter(|(_, &al)| al > 0.0)
                .map(|(k, &al)| (idx[k], al * y[k]))
                .unzip();
            PairFit {
                a,
                b,
                sv,
                coef,
                rho: sol.rho,
            }
        })
        .collect()
}

/// Majority vote over `(a, b, f)` pair decisions.
pub(crate) fn vote(
    n_classes: usize,
    decisions: impl IntoIterator<Item = (usize, usize, f64)>,
) -> usize {
    let mut votes = vec![0usize; n_classes];
    let mut strength = vec![0.0f64; n_classes];
    for (a, b, f) in decisions {
        let winner = if f > 0.0 { a } else { b };
        votes[winner] += 1;
        strength[winner] += f.abs();
    }
    let mut best = 0;
    for k in 1..n_classes {
        if votes[k] > votes[best] || (votes[k] == votes[best] && strength[k] > strength[best]) {
            best = k;
        }
    }
    best
}

/// Trains a one-vs-one model with default solver options.
pub fn train_multiclass<S: AsRef<[f64]> + Sync, L: AsRef<str>>(
    samples: &[S],
    labels: &[L],
    c: f64,
    gamma: f64,
) -> Result<SvmModel> {
    train_multiclass_with(samples, labels, &SvmParams::new(c, gamma))
}

pub fn train_multiclass_with<S: AsRef<[f64]> + Sync, L: AsRef<str>>(
    samples: &[S],
    labels: &[L],
    params: &SvmParams,
) -> Result<SvmModel> {
    params.validate()?;
    let dim = check_samples(samples)?;
    if samples.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: samples.len(),
            found: labels.len(),
        });
    }
    let (classes, class_of) = index_labels(labels);
    if classes.len() < 2 {
        return Err(Error::SingleClass);
    }
    let kernel = FeatureKernel {
        samples: samples.iter().map(AsRef::as_ref).collect(),
        gamma: params.gamma,
    };
    let train: Vec<usize> = (0..samples.len()).collect();
    let fits = fit_pairs(
        &kernel,
        &train,
        &class_of,
        classes.len(),
        params.c,
        &params.solver,
    );
    let pairs = fits.iter().map(|f| (f.a, f.b)).collect();
    let binaries = fits
        .into_iter()
        .map(|f| BinaryModel {
            support_vectors: f.sv.iter().map(|&t| samples[t].as_ref().to_vec()).collect(),
            coefficients: f.coef,
            bias: -f.rho,
            gamma: params.gamma,
            c: params.c,
        })
        .collect();
    Ok(SvmModel {
        classes,
        pairs,
        binaries,
        trained_dim: dim,
        c: params.c,
        gamma: params.gamma,
        descriptor: None,
    })
}

impl SvmModel {
    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn binaries(&self) -> &[BinaryModel] {
        &self.binaries
    }

    /// Class index pair of each binary model.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn trained_dim(&self) -> usize {
        self.trained_dim
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Canonical descriptor string the model was trained on, if recorded.
    pub fn descriptor(&self) -> Option<&str> {
        self.descriptor.as_deref()
    }

    pub fn set_descriptor(&mut self, descriptor: Option<String>) {
        self.descriptor = descriptor;
    }

    pub fn total_support_vectors(&self) -> usize {
        self.binaries.iter().map(|b| b.support_vectors.len()).sum()
    }

    /// Decision value of every pair model.
    pub fn decision_values(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.trained_dim {
            return Err(Error::DimensionMismatch {
                expected: self.trained_dim,
                found: x.len(),
            });
        }
        Ok(self.binaries.iter().map(|b| b.decision(x)).collect())
    }

    pub fn predict_index(&self, x: &[f64]) -> Result<usize> {
        let d = self.decision_values(x)?;
        Ok(vote(
            self.classes.len(),
            self.pairs.iter().zip(d).map(|(&(a, b), f)| (a, b, f)),
        ))
    }

    /// Predicted class label.
    pub fn predict(&self, x: &[f64]) -> Result<&str> {
        Ok(&self.classes[self.predict_index(x)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_count() {
        assert_eq!(class_pairs(4).len(), 6);
        assert_eq!(class_pairs(2), vec![(0, 1)]);
    }

    #[test]
    fn vote_tie_breaks() {
        // 3 classes, every class wins once: strength decides
        let d = [(0, 1, 0.5), (0, 2, -2.0), (1, 2, 1.0)];
        assert_eq!(vote(3, d), 2);
        // equal strength too: lowest index
        let d = [(0, 1, 1.0), (0, 2, -1.0), (1, 2, 1.0)];
        assert_eq!(vote(3, d), 0);
    }

    #[test]
    fn one_sample_per_class() {
        let x = vec![
            vec![0.0, 0.0],
            vec![5.0, 0.0],
            vec![0.0, 5.0],
            vec![5.0, 5.0],
        ];
        let labels = ["a", "b", "c", "d"];
        let m = train_multiclass(&x, &labels, 10.0, 0.5).unwrap();
        assert_eq!(m.binaries().len(), 6);
        for (s, l) in x.iter().zip(labels) {
            assert_eq!(m.predict(s).unwrap(), l);
        }
        assert!(matches!(
            m.predict(&[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn single_class_rejected() {
        let x = vec![vec![0.0], vec![1.0]];
        assert!(matches!(
            train_multiclass(&x, &["a", "a"], 1.0, 1.0),
            Err(Error::SingleClass)
        ));
    }
}
