use std::fmt;

use serde::{Deserialize, Serialize};

/// Maximum number of witnesses kept in a report; `failure_count` keeps the total.
pub const MAX_WITNESSES: usize = 64;

/// Outcome of checking a structure against its defining regularity property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub valid: bool,
    /// The common count, when every tallied count agreed.
    pub inferred_lambda: Option<u64>,
    pub failures: Vec<Failure>,
    /// Total number of failures found (`failures` may be truncated).
    pub failure_count: u64,
}

impl VerificationReport {
    pub(crate) fn from_failures(
        inferred_lambda: Option<u64>,
        failures: Vec<Failure>,
        failure_count: u64,
    ) -> Self {
        VerificationReport {
            valid: failures.is_empty(),
            inferred_lambda,
            failures,
            failure_count,
        }
    }
}

/// A single witness against validity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    /// A point subset contained in the wrong number of blocks.
    SubsetCount {
        subset: Vec<usize>,
        observed: u64,
        expected: u64,
    },
    /// A nonzero residue covered the wrong number of times by differences.
    DifferenceCount {
        residue: usize,
        observed: u64,
        expected: u64,
    },
    /// An array row repeating a symbol.
    RepeatedSymbol { row: usize, symbol: usize },
    /// Symbols occurring in given columns of the wrong number of rows.
    ColumnCount {
        columns: Vec<usize>,
        symbols: Vec<usize>,
        observed: u64,
        expected: u64,
    },
    /// Among rows containing `context`, the symbols `symbols` occupy
    /// `columns` a different number of times than they occupy `reference`.
    UnevenPlacement {
        context: Vec<usize>,
        symbols: Vec<usize>,
        columns: Vec<usize>,
        observed: u64,
        reference: Vec<usize>,
        reference_count: u64,
    },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::SubsetCount {
                subset,
                observed,
                expected,
            } => write!(
                f,
                "subset {subset:?} lies in {observed} blocks (expected {expected})"
            ),
            Failure::DifferenceCount {
                residue,
                observed,
                expected,
            } => write!(
                f,
                "residue {residue} arises {observed} times as a difference (expected {expected})"
            ),
            Failure::RepeatedSymbol { row, symbol } => {
                write!(f, "row {row} repeats symbol {symbol}")
            }
            Failure::ColumnCount {
                columns,
                symbols,
                observed,
                expected,
            } => write!(
                f,
                "symbols {symbols:?} fill columns {columns:?} in {observed} rows (expected {expected})"
            ),
            Failure::UnevenPlacement {
                context,
                symbols,
                columns,
                observed,
                reference,
                reference_count,
            } => write!(
                f,
                "within rows containing {context:?}, symbols {symbols:?} occupy columns {columns:?} \
                 {observed} times but columns {reference:?} {reference_count} times"
            ),
        }
    }
}
