//! Sequential minimal optimization for the C-SVM dual with an RBF kernel.
//!
//! Solves `min ½ αᵀQα - eᵀα` subject to `0 ≤ α ≤ C`, `yᵀα = 0`, with
//! `Q_ij = y_i y_j K(x_i, x_j)`. Each iteration picks the maximal violating
//! pair
//!
//! ```text
//! i = argmax { -y_t G_t : t ∈ I_up },   j = argmin { -y_t G_t : t ∈ I_low }
//! ```
//!
//! and stops once the gap falls below `eps`.

use std::collections::VecDeque;
use std::rc::Rc;

use log::warn;

const TAU: f64 = 1e-12;

/// Kernel values over a global sample index space.
pub(crate) trait Kernel {
    fn eval(&self, i: usize, j: usize) -> f64;
}

#[inline]
pub(crate) fn squared_distance(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// RBF kernel evaluated from the feature vectors.
pub(crate) struct FeatureKernel<'a> {
    pub samples: Vec<&'a [f64]>,
    pub gamma: f64,
}

impl Kernel for FeatureKernel<'_> {
    #[inline]
    fn eval(&self, i: usize, j: usize) -> f64 {
        (-self.gamma * squared_distance(self.samples[i], self.samples[j])).exp()
    }
}

/// RBF kernel over a precomputed squared-distance matrix.
pub(crate) struct DistanceKernel<'a> {
    pub d2: &'a [f64],
    pub n: usize,
    pub gamma: f64,
}

impl Kernel for DistanceKernel<'_> {
    #[inline]
    fn eval(&self, i: usize, j: usize) -> f64 {
        (-self.gamma * self.d2[i * self.n + j]).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Stopping tolerance on the maximal KKT violation.
    pub eps: f64,
    pub max_iter: usize,
    /// Budget for cached kernel rows.
    pub cache_bytes: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            eps: 1e-3,
            max_iter: 100_000,
            cache_bytes: 256 << 20,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Solution {
    pub alpha: Vec<f64>,
    pub rho: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// FIFO cache of Q rows.
struct RowCache<'a, K: Kernel> {
    kernel: &'a K,
    idx: &'a [usize],
    y: &'a [f64],
    rows: Vec<Option<Rc<Vec<f64>>>>,
    order: VecDeque<usize>,
    capacity: usize,
}

impl<'a, K: Kernel> RowCache<'a, K> {
    fn new(kernel: &'a K, idx: &'a [usize], y: &'a [f64], cache_bytes: usize) -> Self {
        let n = idx.len();
        let capacity = (cache_bytes / (8 * n.max(1))).max(2);
        Self {
            kernel,
            idx,
            y,
            rows: vec![None; n],
            order: VecDeque::new(),
            capacity,
        }
    }

    fn row(&mut self, i: usize) -> Rc<Vec<f64>> {
        if let Some(r) = &self.rows[i] {
            return Rc::clone(r);
        }
        let gi = self.idx[i];
        let yi = self.y[i];
        let row: Vec<f64> = self
            .idx
            .iter()
            .zip(self.y)
            .map(|(&gj, &yj)| yi * yj * self.kernel.eval(gi, gj))
            .collect();
        let row = Rc::new(row);
        if self.order.len() >= self.capacity {
            if let Some(old) = self.order.pop_front() {
                self.rows[old] = None;
            }
        }
        self.rows[i] = Some(Rc::clone(&row));
        self.order.push_back(i);
        row
    }
}

/// Trains on the samples `idx` (global indices into the kernel) with labels
/// `y ∈ {-1, +1}`.
pub(crate) fn solve<K: Kernel>(
    kernel: &K,
    idx: &[usize],
    y: &[f64],
    c: f64,
    opts: &SolverOptions,
) -> Solution {
    let n = idx.len();
    let mut alpha = vec![0.0; n];
    let mut grad = vec![-1.0; n];
    let diag: Vec<f64> = idx.iter().map(|&g| kernel.eval(g, g)).collect();
    let mut cache = RowCache::new(kernel, idx, y, opts.cache_bytes);

    let in_up = |a: f64, yt: f64| (yt > 0.0 && a < c) || (yt < 0.0 && a > 0.0);
    let in_low = |a: f64, yt: f64| (yt > 0.0 && a > 0.0) || (yt < 0.0 && a < c);

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        let mut g_max = f64::NEG_INFINITY;
        let mut g_min = f64::INFINITY;
        let (mut i, mut j) = (usize::MAX, usize::MAX);
        for t in 0..n {
            let v = -y[t] * grad[t];
            if in_up(alpha[t], y[t]) && v > g_max {
                g_max = v;
                i = t;
            }
            if in_low(alpha[t], y[t]) && v < g_min {
                g_min = v;
                j = t;
            }
        }
        if i == usize::MAX || j == usize::MAX || g_max - g_min < opts.eps {
            converged = true;
            break;
        }
        iterations += 1;

        let q_i = cache.row(i);
        let q_j = cache.row(j);
        let (old_i, old_j) = (alpha[i], alpha[j]);
        if y[i] != y[j] {
            let quad = (diag[i] + diag[j] + 2.0 * q_i[j]).max(TAU);
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let quad = (diag[i] + diag[j] - 2.0 * q_i[j]).max(TAU);
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }
        let (d_i, d_j) = (alpha[i] - old_i, alpha[j] - old_j);
        for t in 0..n {
            grad[t] += q_i[t] * d_i + q_j[t] * d_j;
        }
    }
    if !converged {
        warn!(
            "SMO stopped after {iterations} iterations without reaching eps = {}",
            opts.eps
        );
    }

    Solution {
        rho: compute_rho(&alpha, &grad, y, c),
        alpha,
        iterations,
        converged,
    }
}

fn compute_rho(alpha: &[f64], grad: &[f64], y: &[f64], c: f64) -> f64 {
    let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut sum_free, mut n_free) = (0.0, 0usize);
    for t in 0..alpha.len() {
        let yg = y[t] * grad[t];
        if alpha[t] >= c {
            if y[t] < 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else if alpha[t] <= 0.0 {
            if y[t] > 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else {
            n_free += 1;
            sum_free += yg;
        }
    }
    if n_free > 0 {
        sum_free / n_free as f64
    } else {
        (ub + lb) / 2.0
    }
}
