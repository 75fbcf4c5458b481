//! Batch feature extraction and the delimited feature table format.
//!
//! ```text
//! #descriptor=<canonical config>
//! <path>,<label>,<v_1>,...,<v_dim>
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use super::manifest::{DatasetManifest, ManifestEntry};
use crate::error::{Error, Result};
use crate::feature::FeatureVector;
use crate::imgio::{load_image, resize, GrayImage};
use crate::regions::{extract, DescriptorConfig};

const HEADER: &str = "#descriptor=";

/// Loads an image and brings it to `size × size` when it is not already.
pub fn load_working_image(path: &Path, size: u32) -> Result<GrayImage> {
    let img = load_image(path)?;
    if img.width() == size && img.height() == size {
        Ok(img)
    } else {
        resize(&img, size, size)
    }
}

/// Extracts `cfg` from every entry in parallel, preserving order. The first
/// failure in manifest order aborts with its path.
pub fn extract_entries(
    entries: &[ManifestEntry],
    cfg: &DescriptorConfig,
    size: u32,
) -> Result<Vec<FeatureVector>> {
    cfg.validate()?;
    entries
        .par_iter()
        .map(|e| {
            load_working_image(&e.path, size)
                .and_then(|img| extract(&img, cfg))
                .map_err(|source| Error::Extraction {
                    path: e.path.clone(),
                    source: Box::new(source),
                })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub path: String,
    pub label: String,
    pub values: Vec<f64>,
}

/// Labelled feature vectors for one descriptor configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    pub descriptor: String,
    pub rows: Vec<FeatureRow>,
}

impl FeatureTable {
    pub fn from_manifest(m: &DatasetManifest, cfg: &DescriptorConfig, size: u32) -> Result<Self> {
        let features = extract_entries(m.entries(), cfg, size)?;
        Ok(Self {
            descriptor: cfg.to_string(),
            rows: m
                .entries()
                .iter()
                .zip(features)
                .map(|(e, f)| FeatureRow {
                    path: e.path.display().to_string(),
                    label: e.label.clone(),
                    values: f.into_values(),
                })
                .collect(),
        })
    }

    pub fn samples(&self) -> Vec<&[f64]> {
        self.rows.iter().map(|r| r.values.as_slice()).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.rows.iter().map(|r| r.label.as_str()).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{HEADER}{}\n", self.descriptor);
        for r in &self.rows {
            write!(s, "{},{}", r.path, r.label).unwrap();
            for v in &r.values {
                write!(s, ",{v:?}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse {
            path: source.to_string(),
            line,
            message,
        };
        let mut lines = text.lines().enumerate();
        let descriptor = lines
            .next()
            .and_then(|(_, l)| l.strip_prefix(HEADER))
            .ok_or_else(|| err(1, format!("expected `{HEADER}<config>` header")))?
            .to_string();
        let mut rows: Vec<FeatureRow> = Vec::new();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            let (Some(path), Some(label)) = (fields.next(), fields.next()) else {
                return Err(err(i + 1, "expected `path,label,values...`".into()));
            };
            let values = fields
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|_| err(i + 1, format!("invalid value `{f}`")))
                })
                .collect::<Result<Vec<f64>>>()?;
            if let Some(first) = rows.first() {
                if first.values.len() != values.len() {
                    return Err(err(
                        i + 1,
                        format!(
                            "{} values, earlier rows have {}",
                            values.len(),
                            first.values.len()
                        ),
                    ));
                }
            }
            rows.push(FeatureRow {
                path: path.to_string(),
                label: label.to_string(),
                values,
            });
        }
        Ok(Self { descriptor, rows })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        if !path.is_file() {
            return Err(Error::FileNotFound(path.to_path_buf()));
        }
        Self::parse(&fs::read_to_string(path)?, &path.display().to_string())
    }
}

/// Extracts `cfg` over the manifest at the working `size` and writes the
/// table to `out`. Returns the number of data rows.
pub fn export_features(
    m: &DatasetManifest,
    cfg: &DescriptorConfig,
    size: u32,
    out: impl AsRef<Path>,
) -> Result<usize> {
    let table = FeatureTable::from_manifest(m, cfg, size)?;
    table.save(out)?;
    Ok(table.rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_round_trip() {
        let t = FeatureTable {
            descriptor: "riLBP@8,1+16,2".into(),
            rows: vec![
                FeatureRow {
                    path: "a.png".into(),
                    label: "x".into(),
                    values: vec![0.1, 1.0 / 3.0],
                },
                FeatureRow {
                    path: "b.png".into(),
                    label: "y".into(),
                    values: vec![0.0, 1e-300],
                },
            ],
        };
        let text = t.to_text();
        assert!(text.starts_with("#descriptor=riLBP@8,1+16,2\n"));
        assert_eq!(FeatureTable::parse(&text, "t").unwrap(), t);
    }

    #[test]
    fn ragged_rows_rejected() {
        let text = "#descriptor=LBP@8,1\na,x,1.0,2.0\nb,y,1.0\n";
        assert!(matches!(
            FeatureTable::parse(text, "t"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(FeatureTable::parse("a,x,1.0\n", "t").is_err());
    }

    #[test]
    fn missing_image_names_its_path() {
        let entries = vec![ManifestEntry {
            path: "/nonexistent/x.png".into(),
            label: "a".into(),
            split: None,
        }];
        let cfg: DescriptorConfig = "LBP@8,1".parse().unwrap();
        match extract_entries(&entries, &cfg, 32) {
            Err(Error::Extraction { path, source }) => {
                assert_eq!(path, Path::new("/nonexistent/x.png"));
                assert!(matches!(*source, Error::FileNotFound(_)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
