//! Exponential `(C, γ)` grid search with stratified k-fold cross-validation.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::check_samples;
use super::multiclass::{fit_pairs, index_labels, vote, PairFit};
use super::smo::{squared_distance, DistanceKernel, Kernel, SolverOptions};
use crate::error::{Error, Result};

/// Candidate hyperparameters and fold count.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub c_values: Vec<f64>,
    pub gamma_values: Vec<f64>,
    pub folds: usize,
    pub solver: SolverOptions,
}

impl Default for GridSpec {
    /// `C = 2^-5, 2^-3, …, 2^15`, `γ = 2^-15, 2^-13, …, 2^3`, 5 folds.
    fn default() -> Self {
        Self::from_exponents((-5, 15, 2), (-15, 3, 2), 5)
    }
}

fn powers((start, end, step): (i32, i32, i32)) -> Vec<f64> {
    assert!(step > 0, "exponent step must be positive");
    (start..=end)
        .step_by(step as usize)
        .map(|e| 2f64.powi(e))
        .collect()
}

impl GridSpec {
    /// Powers of two over inclusive `(start, end, step)` exponent ranges.
    pub fn from_exponents(c: (i32, i32, i32), gamma: (i32, i32, i32), folds: usize) -> Self {
        Self {
            c_values: powers(c),
            gamma_values: powers(gamma),
            folds,
            solver: SolverOptions::default(),
        }
    }

    /// A one-cell grid.
    pub fn single(c: f64, gamma: f64, folds: usize) -> Self {
        Self {
            c_values: vec![c],
            gamma_values: vec![gamma],
            folds,
            solver: SolverOptions::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.c_values.is_empty() || self.gamma_values.is_empty() {
            return Err(Error::BadParameter("empty grid".into()));
        }
        if self.folds < 2 {
            return Err(Error::BadParameter(format!(
                "folds = {}, need at least 2",
                self.folds
            )));
        }
        for &v in self.c_values.iter().chain(&self.gamma_values) {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::BadParameter(format!("grid value {v}")));
            }
        }
        Ok(())
    }
}

/// Cross-validation outcome of one grid cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCell {
    pub c: f64,
    pub gamma: f64,
    pub correct: usize,
    pub total: usize,
}

impl GridCell {
    pub fn accuracy(&self) -> f64 {
        self.correct as f64 / self.total as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub c: f64,
    pub gamma: f64,
    pub cv_accuracy: f64,
    /// Every cell, `C`-major in grid order.
    pub cells: Vec<GridCell>,
}

/// Fold index of every sample. Each class is shuffled on its own and dealt
/// round-robin, continuing the deal across classes so fold sizes stay level.
pub(crate) fn stratified_folds(
    class_of: &[usize],
    n_classes: usize,
    folds: usize,
    seed: u64,
) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fold_of = vec![0; class_of.len()];
    let mut next = 0;
    for k in 0..n_classes {
        let mut members: Vec<usize> = (0..class_of.len()).filter(|&i| class_of[i] == k).collect();
        members.shuffle(&mut rng);
        for i in members {
            fold_of[i] = next % folds;
            next += 1;
        }
    }
    fold_of
}

struct Prepared {
    n: usize,
    n_classes: usize,
    class_of: Vec<usize>,
    fold_of: Vec<usize>,
    d2: Vec<f64>,
}

fn prepare<S: AsRef<[f64]> + Sync, L: AsRef<str>>(
    samples: &[S],
    labels: &[L],
    folds: usize,
    seed: u64,
) -> Result<Prepared> {
    check_samples(samples)?;
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
    let n = samples.len();
    if n < folds {
        return Err(Error::InsufficientData(format!(
            "{n} samples for {folds} folds"
        )));
    }
    for (k, name) in classes.iter().enumerate() {
        let count = class_of.iter().filter(|&&c| c == k).count();
        if count < 2 {
            return Err(Error::InsufficientData(format!(
                "class {name:?} has {count} sample, every training fold needs it"
            )));
        }
    }
    let fold_of = stratified_folds(&class_of, classes.len(), folds, seed);
    let mut d2 = vec![0.0; n * n];
    d2.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        for (j, v) in row.iter_mut().enumerate() {
            *v = squared_distance(samples[i].as_ref(), samples[j].as_ref());
        }
    });
    Ok(Prepared {
        n,
        n_classes: classes.len(),
        class_of,
        fold_of,
        d2,
    })
}

fn decide(fit: &PairFit, kernel: &DistanceKernel<'_>, x: usize) -> f64 {
    let s: f64 = fit
        .sv
        .iter()
        .zip(&fit.coef)
        .map(|(&t, &a)| a * kernel.eval(t, x))
        .sum();
    s - fit.rho
}

fn cv_correct(p: &Prepared, c: f64, gamma: f64, folds: usize, opts: &SolverOptions) -> usize {
    let kernel = DistanceKernel {
        d2: &p.d2,
        n: p.n,
        gamma,
    };
    (0..folds)
        .map(|f| {
            let train: Vec<usize> = (0..p.n).filter(|&i| p.fold_of[i] != f).collect();
            let fits = fit_pairs(&kernel, &train, &p.class_of, p.n_classes, c, opts);
            (0..p.n)
                .filter(|&i| p.fold_of[i] == f)
                .filter(|&i| {
                    let guess = vote(
                        p.n_classes,
                        fits.iter().map(|ft| (ft.a, ft.b, decide(ft, &kernel, i))),
                    );
                    guess == p.class_of[i]
                })
                .count()
        })
        .sum()
}

/// Cross-validated accuracy of one `(C, γ)` setting.
pub fn cross_validate<S: AsRef<[f64]> + Sync, L: AsRef<str>>(
    samples: &[S],
    labels: &[L],
    c: f64,
    gamma: f64,
    folds: usize,
    seed: u64,
) -> Result<f64> {
    let grid = GridSpec::single(c, gamma, folds);
    Ok(grid_search(samples, labels, &grid, seed)?.cv_accuracy)
}

/// Evaluates every grid cell and returns the best. Ties go to the smaller
/// `C`, then the smaller `γ`.
pub fn grid_search<S: AsRef<[f64]> + Sync, L: AsRef<str>>(
    samples: &[S],
    labels: &[L],
    grid: &GridSpec,
    seed: u64,
) -> Result<GridResult> {
    grid.validate()?;
    let p = prepare(samples, labels, grid.folds, seed)?;
    let candidates: Vec<(f64, f64)> = grid
        .c_values
        .iter()
        .flat_map(|&c| grid.gamma_values.iter().map(move |&g| (c, g)))
        .collect();
    let cells: Vec<GridCell> = candidates
        .par_iter()
        .map(|&(c, gamma)| GridCell {
            c,
            gamma,
            correct: cv_correct(&p, c, gamma, grid.folds, &grid.solver),
            total: p.n,
        })
        .collect();
    let best = cells
        .iter()
        .copied()
        .reduce(|best, cell| {
            let better = cell.correct > best.correct
                || (cell.correct == best.correct
                    && (cell.c < best.c || (cell.c == best.c && cell.gamma < best.gamma)));
            if better {
                cell
            } else {
                best
            }
        })
        .expect("non-empty grid");
    Ok(GridResult {
        c: best.c,
        gamma: best.gamma,
        cv_accuracy: best.accuracy(),
        cells,
    })
}
