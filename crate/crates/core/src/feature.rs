/// Ordered real-valued features tagged with the descriptor that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    values: Vec<f64>,
    descriptor: String,
}

impl FeatureVector {
    pub fn new(values: Vec<f64>, descriptor: impl Into<String>) -> Self {
        Self {
            values,
            descriptor: descriptor.into(),
        }
    }

    /// L1-normalized histogram from raw bin counts. An all-zero count vector
    /// stays all zero.
    pub fn from_counts(counts: &[u64], descriptor: impl Into<String>) -> Self {
        let total: u64 = counts.iter().sum();
        let values = if total == 0 {
            vec![0.0; counts.len()]
        } else {
            let t = total as f64;
            counts.iter().map(|&c| c as f64 / t).collect()
        };
        Self::new(values, descriptor)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// Concatenates blocks in order under a new tag.
    pub fn concat<'a>(
        blocks: impl IntoIterator<Item = &'a FeatureVector>,
        descriptor: impl Into<String>,
    ) -> Self {
        let values = blocks
            .into_iter()
            .flat_map(|b| b.values.iter().copied())
            .collect();
        Self::new(values, descriptor)
    }
}

impl AsRef<[f64]> for FeatureVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}
