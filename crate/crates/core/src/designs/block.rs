use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::combin::{binomial, choose, next_subset, to_u64, Budget, ColexRanker};
use crate::verification::{Failure, VerificationReport, MAX_WITNESSES};
use crate::{Error, Result};

/// A set of k-element blocks over the points `0..v`, in canonical form:
/// every block strictly increasing, the block list lexicographically sorted,
/// no block repeated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockDesign {
    v: usize,
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockDesign {
    /// Canonicalizes and validates the blocks. Offenders are listed in the
    /// error: out-of-range points, repeated points, size mismatches and
    /// duplicate blocks.
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let Some(first) = blocks.first() else {
            return Err(Error::structural("design has no blocks", vec![]));
        };
        let k = first.len();
        let mut offenders = Vec::new();
        let mut canonical = Vec::with_capacity(blocks.len());
        for (i, mut block) in blocks.into_iter().enumerate() {
            if block.len() != k {
                offenders.push(format!("block {i} has {} points, expected {k}", block.len()));
            }
            if let Some(&p) = block.iter().find(|&&p| p >= v) {
                offenders.push(format!("block {i} has point {p} outside 0..{v}"));
            }
            block.sort_unstable();
            if let Some(w) = block.windows(2).find(|w| w[0] == w[1]) {
                offenders.push(format!("block {i} repeats point {}", w[0]));
            }
            canonical.push(block);
        }
        if k == 0 {
            offenders.push("blocks are empty".to_string());
        }
        if !offenders.is_empty() {
            return Err(Error::structural("invalid blocks", offenders));
        }
        canonical.sort();
        let duplicates: BTreeSet<_> = canonical
            .windows(2)
            .filter(|w| w[0] == w[1])
            .map(|w| format!("{:?}", w[0]))
            .collect();
        if !duplicates.is_empty() {
            return Err(Error::structural(
                "repeated blocks",
                duplicates.into_iter().collect(),
            ));
        }
        Ok(BlockDesign {
            v,
            k,
            blocks: canonical,
        })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks through each point.
    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.v];
        for block in &self.blocks {
            for &p in block {
                deg[p] += 1;
            }
        }
        deg
    }

    /// Whether translation by every g ∈ Z_v maps the block set onto itself.
    pub fn is_cyclic(&self) -> bool {
        let set: BTreeSet<&Vec<usize>> = self.blocks.iter().collect();
        self.blocks.iter().all(|block| {
            let mut shifted: Vec<usize> = block.iter().map(|&p| (p + 1) % self.v).collect();
            shifted.sort_unstable();
            set.contains(&shifted)
        })
    }
}

/// Counts, for every t-subset of points, the blocks containing it.
///
/// With `lambda` absent the count of the first subset `{0..t-1}` is the
/// reference every other count is compared against. Refuses instances whose
/// tally work exceeds `budget`.
pub fn verify_design(
    design: &BlockDesign,
    t: usize,
    lambda: Option<u64>,
    budget: Budget,
) -> Result<VerificationReport> {
    let (v, k) = (design.v, design.k);
    if t > k {
        return Err(Error::domain(format!("t = {t} exceeds block size k = {k}")));
    }
    let subsets = binomial(v as u64, t as u64);
    budget.check("t-subset enumeration", &subsets)?;
    let tallies = BigUint::from(design.b()) * binomial(k as u64, t as u64);
    budget.check("block t-subset tally", &tallies)?;

    let ranker = ColexRanker::new(v, t)
        .ok_or_else(|| Error::domain("subset count does not fit in memory"))?;
    let len = to_u64(&subsets)
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| Error::domain("subset count does not fit in memory"))?;
    let mut counts = vec![0u64; len];
    let mut sub = vec![0usize; t];
    for block in &design.blocks {
        // positions within the block
        sub.iter_mut().enumerate().for_each(|(i, x)| *x = i);
        loop {
            let points: Vec<usize> = sub.iter().map(|&i| block[i]).collect();
            counts[ranker.rank(&points)] += 1;
            if !next_subset(&mut sub, k) {
                break;
            }
        }
    }

    let reference = lambda.unwrap_or_else(|| counts[ranker.rank(&(0..t).collect::<Vec<_>>())]);
    let mut failures = Vec::new();
    let mut failure_count = 0u64;
    let mut uniform = true;
    let first = counts[0];
    let mut subset: Vec<usize> = (0..t).collect();
    loop {
        let observed = counts[ranker.rank(&subset)];
        uniform &= observed == first;
        if observed != reference {
            failure_count += 1;
            if failures.len() < MAX_WITNESSES {
                failures.push(Failure::SubsetCount {
                    subset: subset.clone(),
                    observed,
                    expected: reference,
                });
            }
        }
        if !next_subset(&mut subset, v) {
            break;
        }
    }
    let inferred = (uniform && first > 0).then_some(first);
    if inferred.is_none() && failures.is_empty() {
        // every count equals the declared λ = 0
        failure_count = 1;
        failures.push(Failure::SubsetCount {
            subset: (0..t).collect(),
            observed: 0,
            expected: reference,
        });
    }
    Ok(VerificationReport::from_failures(inferred, failures, failure_count))
}

/// The derived design at `x`: blocks through `x` with `x` removed, points
/// above `x` shifted down by one.
pub fn derived_design(design: &BlockDesign, t: usize, x: usize) -> Result<BlockDesign> {
    if t < 2 {
        return Err(Error::domain(format!(
            "derived designs need strength t >= 2, got {t}"
        )));
    }
    if x >= design.v {
        return Err(Error::domain(format!("point {x} outside 0..{}", design.v)));
    }
    if design.k < 2 {
        return Err(Error::domain("derived design of 1-point blocks is empty"));
    }
    let blocks = design
        .blocks
        .iter()
        .filter(|b| b.binary_search(&x).is_ok())
        .map(|b| {
            b.iter()
                .filter(|&&p| p != x)
                .map(|&p| if p > x { p - 1 } else { p })
                .collect()
        })
        .collect();
    BlockDesign::new(design.v - 1, blocks)
}

/// All k-subsets of `0..v`.
pub fn complete_design(v: usize, k: usize) -> Result<BlockDesign> {
    if k > v || k == 0 {
        return Err(Error::domain(format!("need 1 <= k <= v, got k={k}, v={v}")));
    }
    let points: Vec<usize> = (0..v).collect();
    BlockDesign::new(v, choose(&points, k).collect())
}
