use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::{Error, Result};

/// A b×k encoding matrix: rows are keys (encoding rules), columns are
/// source states, entries are messages in `0..v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EncodingMatrix {
    v: usize,
    k: usize,
    rows: Vec<Vec<usize>>,
}

impl EncodingMatrix {
    /// Checks every row has k distinct messages in range and that no two
    /// rows have the same message set.
    pub fn new(v: usize, k: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut offenders = Vec::new();
        if rows.is_empty() {
            offenders.push("matrix has no rows".to_string());
        }
        if k == 0 {
            offenders.push("k must be positive".to_string());
        }
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                offenders.push(format!("row {i} has {} entries, expected {k}", row.len()));
                continue;
            }
            if let Some(&m) = row.iter().find(|&&m| m >= v) {
                offenders.push(format!("row {i} has message {m} outside 0..{v}"));
                continue;
            }
            let mut set = row.clone();
            set.sort_unstable();
            if let Some(w) = set.windows(2).find(|w| w[0] == w[1]) {
                offenders.push(format!("row {i} repeats message {}", w[0]));
                continue;
            }
            if let Some(j) = seen.insert(set, i) {
                offenders.push(format!("rows {j} and {i} have the same message set"));
            }
        }
        if !offenders.is_empty() {
            return Err(Error::structural("invalid encoding matrix", offenders));
        }
        Ok(EncodingMatrix { v, k, rows })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Rows as sorted message sets, sorted: comparable with a design's blocks.
    pub fn row_sets(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = self
            .rows
            .iter()
            .map(|r| {
                let mut s = r.clone();
                s.sort_unstable();
                s
            })
            .collect();
        sets.sort();
        sets
    }

    /// `counts[m][c]`: rows carrying message m in column c.
    pub fn column_counts(&self) -> Vec<Vec<usize>> {
        let mut counts = vec![vec![0; self.k]; self.v];
        for row in &self.rows {
            for (c, &m) in row.iter().enumerate() {
                counts[m][c] += 1;
            }
        }
        counts
    }

    /// Plain-text table, one key per line. `orbit_len` inserts a dashed
    /// separator after every that many rows.
    pub fn to_table(&self, orbit_len: Option<usize>) -> String {
        let width = self.v.saturating_sub(1).to_string().len().max(2);
        let label_width = format!("e_{}", self.b()).len();
        let mut out = String::new();
        let _ = write!(out, "{:label_width$}", "");
        for c in 1..=self.k {
            let _ = write!(out, " {:>width$}", format!("s_{c}"), width = width.max(3));
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            if let Some(n) = orbit_len {
                if i > 0 && i % n == 0 {
                    out.push_str(&"-".repeat(label_width + self.k * (width.max(3) + 1)));
                    out.push('\n');
                }
            }
            let _ = write!(out, "{:<label_width$}", format!("e_{}", i + 1));
            for m in row {
                let _ = write!(out, " {:>width$}", m, width = width.max(3));
            }
            out.push('\n');
        }
        out
    }
}

/// Per-(message, column) counts and whether all equal b/v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    /// b/v, when v divides b.
    pub expected: Option<usize>,
    pub counts: Vec<Vec<usize>>,
    /// First (message, column, count) off the expected value.
    pub witness: Option<(usize, usize, usize)>,
}

pub fn verify_balanced(matrix: &EncodingMatrix) -> BalanceReport {
    let counts = matrix.column_counts();
    let expected = matrix.b().is_multiple_of(matrix.v).then(|| matrix.b() / matrix.v);
    let witness = counts.iter().enumerate().find_map(|(m, row)| {
        row.iter()
            .enumerate()
            .find(|&(_, &c)| Some(c) != expected)
            .map(|(col, &c)| (m, col, c))
    });
    BalanceReport {
        balanced: witness.is_none(),
        expected,
        counts,
        witness,
    }
}
