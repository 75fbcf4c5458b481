//! Evaluation metrics.

use std::fmt;

/// Test-set metrics together with the settings that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub classes: Vec<String>,
    /// `confusion[truth][predicted]`.
    pub confusion: Vec<Vec<usize>>,
    pub accuracy: f64,
    /// Per class; 0 when the class was never predicted.
    pub precision: Vec<f64>,
    /// Per class; 0 when the class has no test samples.
    pub recall: Vec<f64>,
    pub config: String,
    pub c: f64,
    pub gamma: f64,
    /// Cross-validation accuracy of the chosen `(C, γ)`, when a search ran.
    pub cv_accuracy: Option<f64>,
    /// Split and fold seed; absent when scoring a stored model.
    pub seed: Option<u64>,
    pub train_count: Option<usize>,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Confusion counts and derived rates from class indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Metrics {
    pub classes: Vec<String>,
    pub confusion: Vec<Vec<usize>>,
    pub accuracy: f64,
    pub precision: Vec<f64>,
    pub recall: Vec<f64>,
}

impl Metrics {
    pub fn new(n_classes: usize, truth: &[usize], predicted: &[usize]) -> Self {
        let mut confusion = vec![vec![0; n_classes]; n_classes];
        for (&t, &p) in truth.iter().zip(predicted) {
            confusion[t][p] += 1;
        }
        let diag = |k: usize| confusion[k][k];
        let trace: usize = (0..n_classes).map(diag).sum();
        let precision = (0..n_classes)
            .map(|k| ratio(diag(k), confusion.iter().map(|row| row[k]).sum()))
            .collect();
        let recall = (0..n_classes)
            .map(|k| ratio(diag(k), confusion[k].iter().sum()))
            .collect();
        Self {
            classes: Vec::new(),
            accuracy: ratio(trace, truth.len()),
            confusion,
            precision,
            recall,
        }
    }
}

impl EvalReport {
    pub fn test_count(&self) -> usize {
        self.confusion.iter().flatten().sum()
    }

    pub fn correct(&self) -> usize {
        (0..self.classes.len()).map(|k| self.confusion[k][k]).sum()
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "descriptor  {}", self.config)?;
        write!(f, "svm         C = {}, gamma = {}", self.c, self.gamma)?;
        if let Some(cv) = self.cv_accuracy {
            write!(f, ", cv accuracy {:.4}", cv)?;
        }
        writeln!(f)?;
        if let Some(seed) = self.seed {
            writeln!(f, "seed        {seed}")?;
        }
        match self.train_count {
            Some(n) => writeln!(f, "samples     {n} train, {} test", self.test_count())?,
            None => writeln!(f, "samples     {} test", self.test_count())?,
        }
        writeln!(
            f,
            "accuracy    {:.4} ({}/{})",
            self.accuracy,
            self.correct(),
            self.test_count()
        )?;
        let width = self
            .classes
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max(9);
        write!(f, "\n{:width$}", "truth\\pred")?;
        for c in &self.classes {
            write!(f, " {:>w$}", c, w = c.len().max(5))?;
        }
        writeln!(f, "  {:>9} {:>9}", "precision", "recall")?;
        for (k, row) in self.confusion.iter().enumerate() {
            write!(f, "{:width$}", self.classes[k])?;
            for (c, n) in self.classes.iter().zip(row) {
                write!(f, " {:>w$}", n, w = c.len().max(5))?;
            }
            writeln!(f, "  {:>9.4} {:>9.4}", self.precision[k], self.recall[k])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metrics_from_predictions() {
        let m = Metrics::new(3, &[0, 0, 1, 1, 2], &[0, 1, 1, 1, 1]);
        assert_eq!(
            m.confusion,
            vec![vec![1, 1, 0], vec![0, 2, 0], vec![0, 1, 0]]
        );
        assert_eq!(m.accuracy, 3.0 / 5.0);
        assert_eq!(m.precision, vec![1.0, 0.5, 0.0]);
        assert_eq!(m.recall, vec![0.5, 1.0, 0.0]);
    }
}
