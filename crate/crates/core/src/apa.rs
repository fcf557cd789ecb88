//! Authentication perpendicular arrays APA_λ(t,k,v).

use std::collections::{BTreeMap, HashMap};

use crate::combin::{binomial_u64, choose, next_subset, ColexRanker, Subsets};
use crate::verification::{Failure, VerificationReport};
use crate::{Error, Result};

/// A λ·C(v,t) × k array over the symbols `0..v`.
///
/// The constructor checks shape only. Repeated symbols within a row are
/// reported by [`verify_apa`] as a clause (i) failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerpendicularArray {
    t: usize,
    k: usize,
    v: usize,
    lambda: u64,
    rows: Vec<Vec<usize>>,
}

impl PerpendicularArray {
    pub fn new(t: usize, k: usize, v: usize, lambda: u64, rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut offenders = Vec::new();
        if t == 0 || t > k || k > v {
            offenders.push(format!("need 1 <= t <= k <= v, got t={t}, k={k}, v={v}"));
        }
        if lambda == 0 {
            offenders.push("lambda must be positive".to_string());
        }
        let expected = binomial_u64(v as u64, t as u64).and_then(|c| c.checked_mul(lambda));
        if expected != Some(rows.len() as u64) {
            offenders.push(format!(
                "declared lambda*C(v,t) = {} rows, found {}",
                expected.map_or("overflow".to_string(), |e| e.to_string()),
                rows.len()
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                offenders.push(format!("row {i} has {} entries, expected {k}", row.len()));
            } else if let Some(&s) = row.iter().find(|&&s| s >= v) {
                offenders.push(format!("row {i} has symbol {s} outside 0..{v}"));
            }
        }
        if !offenders.is_empty() {
            return Err(Error::structural("invalid perpendicular array", offenders));
        }
        Ok(PerpendicularArray {
            t,
            k,
            v,
            lambda,
            rows,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }
}

fn has_repeat(row: &[usize]) -> Option<usize> {
    let mut sorted = row.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).find(|w| w[0] == w[1]).map(|w| w[0])
}

/// Checks the three defining clauses and keeps the first violation of each:
/// (i) rows have distinct symbols; (ii) each t-set of symbols fills each
/// t-set of columns in exactly λ rows; (iii) for s < t, among the rows
/// containing an (s+1)-set Y anywhere, every s-subset X of Y occupies every
/// s-set of columns equally often.
pub fn verify_apa(array: &PerpendicularArray) -> VerificationReport {
    let (t, k, v) = (array.t, array.k, array.v);
    let mut failures = Vec::new();
    let mut failure_count = 0u64;

    let mut clean = Vec::with_capacity(array.rows.len());
    for (i, row) in array.rows.iter().enumerate() {
        match has_repeat(row) {
            Some(symbol) => {
                failure_count += 1;
                if failure_count == 1 {
                    failures.push(Failure::RepeatedSymbol { row: i, symbol });
                }
            }
            None => clean.push(row),
        }
    }

    // (ii)
    let mut filled: HashMap<(Vec<usize>, Vec<usize>), u64> = HashMap::new();
    for row in &clean {
        for cols in Subsets::new(k, t) {
            let mut syms: Vec<usize> = cols.iter().map(|&c| row[c]).collect();
            syms.sort_unstable();
            *filled.entry((cols, syms)).or_default() += 1;
        }
    }
    let mut first_count = None;
    let mut uniform = true;
    let mut first_ii = None;
    let mut syms: Vec<usize> = (0..t).collect();
    loop {
        for cols in Subsets::new(k, t) {
            let observed = filled.get(&(cols.clone(), syms.clone())).copied().unwrap_or(0);
            if *first_count.get_or_insert(observed) != observed {
                uniform = false;
            }
            if observed != array.lambda {
                failure_count += 1;
                first_ii.get_or_insert(Failure::ColumnCount {
                    columns: cols,
                    symbols: syms.clone(),
                    observed,
                    expected: array.lambda,
                });
            }
        }
        if !next_subset(&mut syms, v) {
            break;
        }
    }
    failures.extend(first_ii);

    // (iii)
    let mut first_iii = None;
    for s in 1..t {
        let ranker = ColexRanker::new(k, s).expect("s < t <= k keeps C(k,s) small");
        let width = binomial_u64(k as u64, s as u64).unwrap_or(0) as usize;
        let mut placements: BTreeMap<(Vec<usize>, Vec<usize>), Vec<u64>> = BTreeMap::new();
        for row in &clean {
            let mut positions: Vec<(usize, usize)> =
                row.iter().enumerate().map(|(c, &x)| (x, c)).collect();
            positions.sort_unstable();
            for y in choose(&positions, s + 1) {
                let context: Vec<usize> = y.iter().map(|p| p.0).collect();
                for x in choose(&y, s) {
                    let symbols: Vec<usize> = x.iter().map(|p| p.0).collect();
                    let mut cols: Vec<usize> = x.iter().map(|p| p.1).collect();
                    cols.sort_unstable();
                    placements
                        .entry((context.clone(), symbols))
                        .or_insert_with(|| vec![0; width])[ranker.rank(&cols)] += 1;
                }
            }
        }
        for ((context, symbols), counts) in &placements {
            let reference: Vec<usize> = (0..s).collect();
            let reference_count = counts[ranker.rank(&reference)];
            for cols in Subsets::new(k, s) {
                let observed = counts[ranker.rank(&cols)];
                if observed != reference_count {
                    failure_count += 1;
                    first_iii.get_or_insert_with(|| Failure::UnevenPlacement {
                        context: context.clone(),
                        symbols: symbols.clone(),
                        columns: cols,
                        observed,
                        reference: reference.clone(),
                        reference_count,
                    });
                }
            }
        }
    }
    failures.extend(first_iii);

    let inferred = first_count.filter(|&c| uniform && c > 0);
    VerificationReport::from_failures(inferred, failures, failure_count)
}

const VAN_REES_BASE: [[usize; 3]; 5] = [[0, 1, 2], [0, 9, 7], [0, 3, 6], [0, 4, 8], [0, 5, 10]];

/// APA_1(2,3,11): five base rows developed mod 11. Row `11*i + g` is base
/// row i shifted by g.
pub fn van_rees_array() -> PerpendicularArray {
    let rows = VAN_REES_BASE
        .iter()
        .flat_map(|base| (0..11).map(move |g| base.iter().map(|x| (x + g) % 11).collect()))
        .collect();
    PerpendicularArray::new(2, 3, 11, 1, rows).expect("van Rees array has the declared shape")
}
