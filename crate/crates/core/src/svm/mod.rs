//! C-parameterized soft-margin SVM with an RBF kernel.
//!
//! Binary problems are solved with SMO ([`smo`]). Multi-class models use
//! one-vs-one decomposition with majority voting ([`multiclass`]), and
//! hyperparameters are chosen by stratified k-fold cross-validation over an
//! exponential grid ([`grid`]). Models persist to a versioned text format
//! ([`persist`]).

pub mod grid;
pub mod multiclass;
pub mod persist;
pub mod smo;

use crate::error::{Error, Result};

pub use grid::{cross_validate, grid_search, GridCell, GridResult, GridSpec};
pub use multiclass::{train_multiclass, train_multiclass_with, SvmModel};
pub use smo::SolverOptions;

use smo::{squared_distance, FeatureKernel};

/// `exp(-γ ‖x - y‖²)`.
pub fn rbf(x: &[f64], y: &[f64], gamma: f64) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok((-gamma * squared_distance(x, y)).exp())
}

/// Training hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmParams {
    pub c: f64,
    pub gamma: f64,
    pub solver: SolverOptions,
}

impl SvmParams {
    pub fn new(c: f64, gamma: f64) -> Self {
        Self {
            c,
            gamma,
            solver: SolverOptions::default(),
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::BadParameter(format!("C = {}", self.c)));
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(Error::BadParameter(format!("gamma = {}", self.gamma)));
        }
        Ok(())
    }
}

/// Two-class decision function `f(x) = Σ coef_i K(sv_i, x) + bias`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryModel {
    pub support_vectors: Vec<Vec<f64>>,
    /// Signed dual coefficients `α_i y_i`.
    pub coefficients: Vec<f64>,
    pub bias: f64,
    pub gamma: f64,
    pub c: f64,
}

impl BinaryModel {
    pub fn dim(&self) -> usize {
        self.support_vectors.first().map_or(0, Vec::len)
    }

    pub fn decision(&self, x: &[f64]) -> f64 {
        let s: f64 = self
            .support_vectors
            .iter()
            .zip(&self.coefficients)
            .map(|(sv, &coef)| coef * (-self.gamma * squared_distance(sv, x)).exp())
            .sum();
        s + self.bias
    }

    /// `+1` when the decision value is positive, `-1` otherwise.
    pub fn predict(&self, x: &[f64]) -> Result<i8> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(if self.decision(x) > 0.0 { 1 } else { -1 })
    }
}

/// A trained binary model together with the full dual vector.
#[derive(Debug, Clone)]
pub struct BinarySolution {
    pub model: BinaryModel,
    /// `α_i` for every training sample, in input order.
    pub alphas: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl BinarySolution {
    /// `|Σ α_i y_i|`.
    pub fn equality_residual(&self, y: &[i8]) -> f64 {
        self.alphas
            .iter()
            .zip(y)
            .map(|(a, &l)| a * l as f64)
            .sum::<f64>()
            .abs()
    }

    /// Largest KKT violation measured on the decision function:
    /// `α = 0 ⇒ y f ≥ 1`, `0 < α < C ⇒ y f = 1`, `α = C ⇒ y f ≤ 1`.
    pub fn max_kkt_violation<S: AsRef<[f64]>>(&self, samples: &[S], y: &[i8]) -> f64 {
        let c = self.model.c;
        samples
            .iter()
            .zip(y)
            .zip(&self.alphas)
            .map(|((x, &label), &a)| {
                let margin = label as f64 * self.model.decision(x.as_ref());
                if a <= 0.0 {
                    (1.0 - margin).max(0.0)
                } else if a >= c {
                    (margin - 1.0).max(0.0)
                } else {
                    (margin - 1.0).abs()
                }
            })
            .fold(0.0, f64::max)
    }
}

pub(crate) fn check_samples<S: AsRef<[f64]>>(samples: &[S]) -> Result<usize> {
    let dim = samples
        .first()
        .map(|s| s.as_ref().len())
        .ok_or_else(|| Error::InsufficientData("no samples".into()))?;
    for s in samples {
        if s.as_ref().len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.as_ref().len(),
            });
        }
    }
    Ok(dim)
}

/// Trains a binary model on labels in `{-1, +1}`.
pub fn train_binary<S: AsRef<[f64]>>(
    samples: &[S],
    y: &[i8],
    c: f64,
    gamma: f64,
) -> Result<BinaryModel> {
    Ok(train_binary_with(samples, y, &SvmParams::new(c, gamma))?.model)
}

/// Like [`train_binary`], returning the dual solution as well.
pub fn train_binary_with<S: AsRef<[f64]>>(
    samples: &[S],
    y: &[i8],
    params: &SvmParams,
) -> Result<BinarySolution> {
    params.validate()?;
    check_samples(samples)?;
    if samples.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: samples.len(),
            found: y.len(),
        });
    }
    if let Some(bad) = y.iter().find(|&&l| l != 1 && l != -1) {
        return Err(Error::BadParameter(format!(
            "binary label {bad}, expected -1 or +1"
        )));
    }
    if !(y.contains(&1) && y.contains(&-1)) {
        return Err(Error::SingleClass);
    }
    let kernel = FeatureKernel {
        samples: samples.iter().map(AsRef::as_ref).collect(),
        gamma: params.gamma,
    };
    let idx: Vec<usize> = (0..samples.len()).collect();
    let yf: Vec<f64> = y.iter().map(|&l| l as f64).collect();
    let sol = smo::solve(&kernel, &idx, &yf, params.c, &params.solver);
    let (support_vectors, coefficients) = sol
        .alpha
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0.0)
        .map(|(t, &a)| (samples[t].as_ref().to_vec(), a * yf[t]))
        .unzip();
    Ok(BinarySolution {
        model: BinaryModel {
            support_vectors,
            coefficients,
            bias: -sol.rho,
            gamma: params.gamma,
            c: params.c,
        },
        alphas: sol.alpha,
        iterations: sol.iterations,
        converged: sol.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rbf_examples() {
        assert_eq!(rbf(&[1.0, 2.0], &[1.0, 2.0], 3.0).unwrap(), 1.0);
        assert!((rbf(&[0.0], &[1.0], 1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
        assert!((rbf(&[0.0], &[5.0], 1e-12).unwrap() - 1.0).abs() < 1e-9);
        assert!(matches!(
            rbf(&[0.0], &[1.0, 2.0], 1.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn separable_pair() {
        let x = vec![vec![0.0], vec![1.0]];
        let y = [-1, 1];
        let m = train_binary(&x, &y, 10.0, 1.0).unwrap();
        assert_eq!(m.predict(&[0.0]).unwrap(), -1);
        assert_eq!(m.predict(&[1.0]).unwrap(), 1);
    }

    #[test]
    fn xor_trains_perfectly() {
        let x = vec![
            vec![0.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
            vec![1.0, 0.0],
        ];
        let y = [-1, -1, 1, 1];
        let sol = train_binary_with(&x, &y, &SvmParams::new(10.0, 2.0)).unwrap();
        for (s, &l) in x.iter().zip(&y) {
            assert_eq!(sol.model.predict(s).unwrap(), l);
        }
        assert!(sol.converged);
        assert!(sol.equality_residual(&y) < 1e-6);
        assert!(sol.max_kkt_violation(&x, &y) < 1e-3);
    }

    #[test]
    fn contradictory_labels() {
        let x = vec![vec![0.5, 0.5]; 4];
        let y = [1, -1, 1, -1];
        let m = train_binary(&x, &y, 1.0, 1.0).unwrap();
        let correct = x
            .iter()
            .zip(&y)
            .filter(|(s, &l)| m.predict(s).unwrap() == l)
            .count();
        assert!(correct <= 2);
    }

    #[test]
    fn error_paths() {
        let x = vec![vec![0.0], vec![1.0]];
        assert!(matches!(
            train_binary(&x, &[1, 1], 1.0, 1.0),
            Err(Error::SingleClass)
        ));
        assert!(matches!(
            train_binary(&[vec![0.0], vec![1.0, 2.0]], &[1, -1], 1.0, 1.0),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(train_binary(&x, &[1, -1], 0.0, 1.0).is_err());
        assert!(train_binary(&x, &[1, 2], 1.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn rbf_symmetric_and_bounded(
            x in prop::collection::vec(-10.0f64..10.0, 5),
            y in prop::collection::vec(-10.0f64..10.0, 5),
            gamma in 1e-4f64..4.0,
        ) {
            let a = rbf(&x, &y, gamma).unwrap();
            prop_assert_eq!(a, rbf(&y, &x, gamma).unwrap());
            prop_assert!((0.0..=1.0).contains(&a));
        }

        #[test]
        fn dual_constraints_hold(seed in 0u64..500, c in prop::sample::select(vec![0.5, 2.0, 32.0]), gamma in prop::sample::select(vec![0.1, 1.0, 8.0])) {
            let mut s = seed.wrapping_mul(0x9E3779B97F4A7C15) | 1;
            let mut next = || { s ^= s << 13; s ^= s >> 7; s ^= s << 17; (s >> 11) as f64 / (1u64 << 53) as f64 };
            let x: Vec<Vec<f64>> = (0..24).map(|_| vec![next(), next(), next()]).collect();
            let y: Vec<i8> = x.iter().enumerate().map(|(i, v)| if v[0] + 0.3 * v[1] > 0.6 || i == 0 { 1 } else { -1 }).collect();
            prop_assume!(y.contains(&-1));
            let sol = train_binary_with(&x, &y, &SvmParams::new(c, gamma)).unwrap();
            prop_assert!(sol.alphas.iter().all(|&a| (0.0..=c).contains(&a)));
            prop_assert!(sol.equality_residual(&y) < 1e-6);
            prop_assert!(sol.max_kkt_violation(&x, &y) < 1e-3);
        }
    }
}
