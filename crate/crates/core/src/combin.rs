//! Small combinatorial toolkit: exact binomials, lexicographic subset
//! enumeration and colex ranking.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Binomial coefficient with an arbitrary-precision top argument.
pub fn binomial_big(n: &BigUint, k: u64) -> BigUint {
    let kb = BigUint::from(k);
    if &kb > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    // acc = C(n, i+1) after each step, so every division is exact.
    for i in 0..k {
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    binomial_big(&BigUint::from(n), k)
}

/// `C(n, k)` if it fits in a `u64`.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Advances `subset` (strictly increasing, values in `0..n`) to the next
/// subset of the same size in lexicographic order. Returns `false` after
/// the last one.
pub fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Iterator over all `k`-subsets of `0..n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Subsets {
    current: Vec<usize>,
    n: usize,
    done: bool,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        Subsets {
            current: (0..k).collect(),
            n,
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.done = !next_subset(&mut self.current, self.n);
        Some(out)
    }
}

/// All `k`-element sub-selections of `items`, in lexicographic order of
/// positions.
pub fn choose<T: Clone>(items: &[T], k: usize) -> impl Iterator<Item = Vec<T>> + '_ {
    Subsets::new(items.len(), k).map(move |idx| idx.iter().map(|&i| items[i].clone()).collect())
}

/// Colex ranking of `t`-subsets of `0..n` into `0..C(n, t)`.
#[derive(Debug, Clone)]
pub struct ColexRanker {
    // table[j][x] = C(x, j + 1)
    table: Vec<Vec<u64>>,
}

impl ColexRanker {
    /// Returns `None` when `C(n, t)` overflows `u64`.
    pub fn new(n: usize, t: usize) -> Option<Self> {
        let mut table = Vec::with_capacity(t);
        for j in 0..t {
            let mut row = Vec::with_capacity(n);
            for x in 0..n {
                row.push(binomial_u64(x as u64, j as u64 + 1)?);
            }
            table.push(row);
        }
        binomial_u64(n as u64, t as u64)?;
        Some(ColexRanker { table })
    }

    pub fn rank(&self, subset: &[usize]) -> usize {
        subset
            .iter()
            .enumerate()
            .map(|(j, &x)| self.table[j][x] as usize)
            .sum()
    }
}

/// A work limit for exhaustive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);
    /// Environment variable consulted by the CLI for the default budget.
    pub const ENV_VAR: &'static str = "TDAUTH_BUDGET";

    pub fn check(self, what: &'static str, required: &BigUint) -> crate::Result<()> {
        if required > &BigUint::from(self.0) {
            return Err(crate::Error::Budget {
                what,
                required: required.clone(),
                budget: self.0,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

pub(crate) fn to_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}
