//! Feature-dimension ledger for every protocol feature set.
//!
//! Each row records the reference dimension for a descriptor configuration
//! next to the dimension this crate computes for it. Reference values were
//! derived from a WeberLBP (8,1) size of 117, while 59 + 48 = 107; the four
//! affected rows carry `expected` values that follow the arithmetic and are
//! flagged as discrepancies.

use std::fmt;

use crate::regions::{expected_dimension, DescriptorConfig};

#[derive(Debug, Clone)]
pub struct LedgerRow {
    pub table: u8,
    pub label: String,
    pub config: String,
    /// Reference dimension.
    pub reference: usize,
    /// Dimension this crate must produce.
    pub expected: usize,
}

impl LedgerRow {
    pub fn config(&self) -> DescriptorConfig {
        self.config.parse().expect("ledger configs are valid")
    }

    pub fn computed(&self) -> usize {
        expected_dimension(&self.config())
    }

    pub fn is_discrepancy(&self) -> bool {
        self.reference != self.expected
    }
}

fn row(
    table: u8,
    label: impl Into<String>,
    config: impl Into<String>,
    reference: usize,
    expected: usize,
) -> LedgerRow {
    LedgerRow {
        table,
        label: label.into(),
        config: config.into(),
        reference,
        expected,
    }
}

const ALL3: &str = "8,1+16,2+24,3";

/// All dimension entries of the eight feature-size tables.
pub fn ledger() -> Vec<LedgerRow> {
    let mut rows = vec![
        row(1, "LBP (8,1)", "LBP@8,1", 59, 59),
        row(1, "LBP (16,2)", "LBP@16,2", 243, 243),
        row(1, "LBP (24,3)", "LBP@24,3", 555, 555),
        row(1, "WLD (8,1)", "WLD@8,1", 48, 48),
        row(1, "WLD (16,2)", "WLD@16,2", 48, 48),
        row(1, "WLD (24,3)", "WLD@24,3", 48, 48),
        row(1, "riLBP (8,1)", "riLBP@8,1", 10, 10),
        row(1, "riLBP (16,2)", "riLBP@16,2", 18, 18),
        row(1, "riLBP (24,3)", "riLBP@24,3", 26, 26),
        row(1, "WLDRI (8,1)", "WLDRI@8,1", 48, 48),
        row(1, "WLDRI (16,2)", "WLDRI@16,2", 48, 48),
        row(1, "WLDRI (24,3)", "WLDRI@24,3", 48, 48),
    ];
    let combined = [
        (2, "LBP", "LBP", 857, 857),
        (2, "WLD", "WLD", 144, 144),
        (2, "riLBP", "riLBP", 54, 54),
        (2, "WLDRI", "WLDRI", 144, 144),
        (4, "cogLBP", "cogLBP", 3428, 3428),
        (4, "cogWLD", "cogWLD", 576, 576),
        (4, "cogriLBP", "cogriLBP", 216, 216),
        (4, "cogWLDRI", "cogWLDRI", 576, 576),
        // labelled cog in its table, but the sizes are the single-region sums
        (6, "cogWeberLBP", "WeberLBP", 1011, 1001),
        (6, "cogriWeberLBP", "riWeberLBP", 198, 198),
        (8, "WeberLBP", "cogWeberLBP", 4044, 4004),
        (8, "riWeberLBP", "cogriWeberLBP", 792, 792),
    ];
    let per_scale = [
        (3, "cogLBP", "cogLBP", [236, 972, 2220], [236, 972, 2220]),
        (3, "cogWLD", "cogWLD", [192; 3], [192; 3]),
        (3, "cogriLBP", "cogriLBP", [40, 72, 104], [40, 72, 104]),
        (3, "cogWLDRI", "cogWLDRI", [192; 3], [192; 3]),
        (5, "WeberLBP", "WeberLBP", [117, 291, 603], [107, 291, 603]),
        (5, "riWeberLBP", "riWeberLBP", [58, 66, 74], [58, 66, 74]),
        (
            7,
            "WeberLBP",
            "cogWeberLBP",
            [468, 1164, 2412],
            [428, 1164, 2412],
        ),
        (
            7,
            "riWeberLBP",
            "cogriWeberLBP",
            [232, 264, 296],
            [232, 264, 296],
        ),
    ];
    let scale_names = [("(8,1)", "8,1"), ("(16,2)", "16,2"), ("(24,3)", "24,3")];
    let mut tables: Vec<LedgerRow> = Vec::new();
    for (table, label, name, reference, expected) in per_scale {
        for (i, (scale_label, scale)) in scale_names.iter().enumerate() {
            tables.push(row(
                table,
                format!("{label} {scale_label}"),
                format!("{name}@{scale}"),
                reference[i],
                expected[i],
            ));
        }
    }
    for (table, label, name, reference, expected) in combined {
        tables.push(row(
            table,
            format!("{label} (8,1)+(16,2)+(24,3)"),
            format!("{name}@{ALL3}"),
            reference,
            expected,
        ));
    }
    rows.extend(tables);
    rows.sort_by_key(|r| r.table);
    rows
}

impl fmt::Display for LedgerRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.is_discrepancy() { "*" } else { " " };
        write!(
            f,
            "table {}  {:<34} {:<32} reference {:>5}{}  computed {:>5}",
            self.table,
            self.label,
            self.config,
            self.reference,
            mark,
            self.computed()
        )
    }
}
