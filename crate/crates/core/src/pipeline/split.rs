//! Seeded per-class train/test split.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::manifest::{DatasetManifest, ManifestEntry, SplitTag};
use crate::error::{Error, Result};

/// Train/test partition. Both halves keep manifest order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<ManifestEntry>,
    pub test: Vec<ManifestEntry>,
}

/// Number of training samples for a class of `n` untagged entries:
/// `ratio · n` rounded half up, kept within `[1, n - 1]` so both sides see
/// the class.
pub fn train_count(n: usize, ratio: f64) -> usize {
    let t = (ratio * n as f64 + 0.5).floor() as usize;
    if n >= 2 {
        t.clamp(1, n - 1)
    } else {
        t.min(n)
    }
}

/// Splits every class at `ratio`. Entries carrying a split tag go to their
/// tagged side and do not count toward the ratio.
pub fn stratified_split(m: &DatasetManifest, ratio: f64, seed: u64) -> Result<Split> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::BadParameter(format!(
            "train ratio {ratio} outside (0, 1)"
        )));
    }
    for (label, count) in m.class_counts() {
        if count < 2 {
            return Err(Error::TooFewSamples { label, count });
        }
    }
    let mut untagged: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    let mut side = vec![None; m.len()];
    for (i, e) in m.entries().iter().enumerate() {
        match e.split {
            Some(t) => side[i] = Some(t),
            None => untagged.entry(e.label.as_str()).or_default().push(i),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for members in untagged.values_mut() {
        members.shuffle(&mut rng);
        let t = train_count(members.len(), ratio);
        for (k, &i) in members.iter().enumerate() {
            side[i] = Some(if k < t {
                SplitTag::Train
            } else {
                SplitTag::Test
            });
        }
    }
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for (e, s) in m.entries().iter().zip(side) {
        match s.expect("every entry assigned") {
            SplitTag::Train => train.push(e.clone()),
            SplitTag::Test => test.push(e.clone()),
        }
    }
    Ok(Split { train, test })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;
    use std::path::PathBuf;

    fn manifest(counts: &[(&str, usize)]) -> DatasetManifest {
        let mut entries = Vec::new();
        for (label, n) in counts {
            for i in 0..*n {
                entries.push(ManifestEntry {
                    path: PathBuf::from(format!("{label}/{i}.png")),
                    label: label.to_string(),
                    split: None,
                });
            }
        }
        DatasetManifest::new(entries).unwrap()
    }

    fn count(v: &[ManifestEntry], label: &str) -> usize {
        v.iter().filter(|e| e.label == label).count()
    }

    #[test]
    fn hundred_per_class() {
        let m = manifest(&[("a", 100), ("b", 100), ("c", 100), ("d", 100)]);
        let s = stratified_split(&m, 0.8, 1).unwrap();
        for l in ["a", "b", "c", "d"] {
            assert_eq!(count(&s.train, l), 80);
            assert_eq!(count(&s.test, l), 20);
        }
        let train: HashSet<_> = s.train.iter().map(|e| &e.path).collect();
        assert!(s.test.iter().all(|e| !train.contains(&e.path)));
        assert_eq!(s, stratified_split(&m, 0.8, 1).unwrap());
        assert_ne!(s, stratified_split(&m, 0.8, 2).unwrap());
    }

    #[test]
    fn skin_corpus_proportions() {
        let m = manifest(&[
            ("Leprosy", 262),
            ("Vitiligo", 210),
            ("TineaVersicolor", 242),
            ("Normal", 162),
        ]);
        let s = stratified_split(&m, 0.8, 0).unwrap();
        assert_eq!(s.train.len() + s.test.len(), 876);
        assert_eq!(s.train.len(), 702);
        assert_eq!(s.test.len(), 174);
    }

    #[test]
    fn tags_are_honored() {
        let mut m = manifest(&[("a", 4), ("b", 4)]).entries().to_vec();
        m[0].split = Some(SplitTag::Test);
        m[4].split = Some(SplitTag::Test);
        let m = DatasetManifest::new(m).unwrap();
        let s = stratified_split(&m, 0.5, 3).unwrap();
        assert!(s.test.iter().any(|e| e.path == *"a/0.png"));
        assert!(s.test.iter().any(|e| e.path == *"b/0.png"));
        assert_eq!(count(&s.train, "a"), 2);
    }

    #[test]
    fn too_few_samples() {
        let m = manifest(&[("a", 5), ("b", 1)]);
        assert!(matches!(
            stratified_split(&m, 0.8, 0),
            Err(Error::TooFewSamples { count: 1, .. })
        ));
        assert_eq!(train_count(2, 0.8), 1);
        assert_eq!(train_count(10, 0.85), 9);
        assert_eq!(train_count(5, 0.5), 3);
    }
}
