//! Versioned plain-text model files.
//!
//! ```text
//! texens-svm 1
//! descriptor cogriWeberLBP@16,2      (optional)
//! dim 264
//! c 8.0
//! gamma 0.125
//! classes 4
//! class <name>                        (one line per class, sorted)
//! binaries 6
//! binary <a> <b> <support vectors> <bias>
//! sv <coefficient> <x_1> ... <x_dim> (one line per support vector)
//! ```
//!
//! Floats are written in Rust's shortest round-trip form, so reading a file
//! back gives bit-identical parameters.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{BinaryModel, SvmModel};
use crate::error::{Error, Result};

const MAGIC: &str = "texens-svm";
const VERSION: u32 = 1;

impl SvmModel {
    /// Serializes the model.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{MAGIC} {VERSION}").unwrap();
        if let Some(d) = &self.descriptor {
            writeln!(s, "descriptor {d}").unwrap();
        }
        writeln!(s, "dim {}", self.trained_dim).unwrap();
        writeln!(s, "c {:?}", self.c).unwrap();
        writeln!(s, "gamma {:?}", self.gamma).unwrap();
        writeln!(s, "classes {}", self.classes.len()).unwrap();
        for c in &self.classes {
            writeln!(s, "class {c}").unwrap();
        }
        writeln!(s, "binaries {}", self.binaries.len()).unwrap();
        for (&(a, b), m) in self.pairs.iter().zip(&self.binaries) {
            writeln!(s, "binary {a} {b} {} {:?}", m.support_vectors.len(), m.bias).unwrap();
            for (sv, coef) in m.support_vectors.iter().zip(&m.coefficients) {
                write!(s, "sv {coef:?}").unwrap();
                for v in sv {
                    write!(s, " {v:?}").unwrap();
                }
                s.push('\n');
            }
        }
        s
    }

    /// Parses a model; `source` names the input in error messages.
    pub fn from_text(text: &str, source: &str) -> Result<SvmModel> {
        Reader::new(text, source).model()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<SvmModel> {
        let path = path.as_ref();
        if !path.is_file() {
            return Err(Error::FileNotFound(path.to_path_buf()));
        }
        let text = fs::read_to_string(path)?;
        Self::from_text(&text, &path.display().to_string())
    }
}

struct Reader<'a> {
    lines: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    source: &'a str,
    line: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str, source: &'a str) -> Self {
        Self {
            lines: text.lines().enumerate().peekable(),
            source,
            line: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.source.to_string(),
            line: self.line,
            message: message.into(),
        }
    }

    /// Next line, split into its keyword and the remainder.
    fn keyed(&mut self, key: &str) -> Result<&'a str> {
        let (i, line) = self
            .lines
            .next()
            .ok_or_else(|| self.err(format!("missing `{key}` line")))?;
        self.line = i + 1;
        match line.split_once(' ') {
            Some((k, rest)) if k == key => Ok(rest),
            _ => Err(self.err(format!("expected `{key}`"))),
        }
    }

    fn parse<T: std::str::FromStr>(&self, s: &str, what: &str) -> Result<T> {
        s.trim()
            .parse()
            .map_err(|_| self.err(format!("invalid {what} `{s}`")))
    }

    fn model(mut self) -> Result<SvmModel> {
        let version = self.keyed(MAGIC)?;
        if self.parse::<u32>(version, "version")? != VERSION {
            return Err(self.err(format!("unsupported model version {version}")));
        }
        let descriptor = match self.lines.peek() {
            Some((_, l)) if l.starts_with("descriptor ") => {
                Some(self.keyed("descriptor")?.to_string())
            }
            _ => None,
        };
        let dim: usize = {
            let s = self.keyed("dim")?;
            self.parse(s, "dimension")?
        };
        let c: f64 = {
            let s = self.keyed("c")?;
            self.parse(s, "C")?
        };
        let gamma: f64 = {
            let s = self.keyed("gamma")?;
            self.parse(s, "gamma")?
        };
        let n_classes: usize = {
            let s = self.keyed("classes")?;
            self.parse(s, "class count")?
        };
        let mut classes = Vec::with_capacity(n_classes);
        for _ in 0..n_classes {
            classes.push(self.keyed("class")?.to_string());
        }
        let n_bin: usize = {
            let s = self.keyed("binaries")?;
            self.parse(s, "binary count")?
        };
        if n_bin != n_classes * n_classes.saturating_sub(1) / 2 {
            return Err(self.err(format!("{n_bin} binaries for {n_classes} classes")));
        }
        let mut pairs = Vec::with_capacity(n_bin);
        let mut binaries = Vec::with_capacity(n_bin);
        for _ in 0..n_bin {
            let head: Vec<&str> = self.keyed("binary")?.split(' ').collect();
            if head.len() != 4 {
                return Err(self.err("binary header needs 4 fields"));
            }
            let a: usize = self.parse(head[0], "class index")?;
            let b: usize = self.parse(head[1], "class index")?;
            if a >= b || b >= n_classes {
                return Err(self.err(format!("bad class pair ({a}, {b})")));
            }
            let n_sv: usize = self.parse(head[2], "support vector count")?;
            let bias: f64 = self.parse(head[3], "bias")?;
            let mut support_vectors = Vec::with_capacity(n_sv);
            let mut coefficients = Vec::with_capacity(n_sv);
            for _ in 0..n_sv {
                let fields: Vec<&str> = self.keyed("sv")?.split(' ').collect();
                if fields.len() != dim + 1 {
                    return Err(self.err(format!(
                        "support vector has {} values, expected {dim}",
                        fields.len() - 1
                    )));
                }
                coefficients.push(self.parse(fields[0], "coefficient")?);
                support_vectors.push(
                    fields[1..]
                        .iter()
                        .map(|f| self.parse(f, "feature value"))
                        .collect::<Result<Vec<f64>>>()?,
                );
            }
            pairs.push((a, b));
            binaries.push(BinaryModel {
                support_vectors,
                coefficients,
                bias,
                gamma,
                c,
            });
        }
        if let Some((i, _)) = self.lines.find(|(_, l)| !l.trim().is_empty()) {
            self.line = i + 1;
            return Err(self.err("trailing content"));
        }
        Ok(SvmModel {
            classes,
            pairs,
            binaries,
            trained_dim: dim,
            c,
            gamma,
            descriptor,
        })
    }
}
