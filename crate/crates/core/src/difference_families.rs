//! Cyclic difference families over Z_v: verification, development into
//! 2-designs, the direct encoding-matrix construction, and Netto's triple
//! systems for primes q ≡ 1 (mod 6).

use std::collections::BTreeSet;

use crate::balancing::EncodingMatrix;
use crate::designs::BlockDesign;
use crate::verification::{Failure, VerificationReport, MAX_WITNESSES};
use crate::{Error, Result};

/// Base blocks over the cyclic group Z_v with a declared index λ.
///
/// Base-block coordinate order is kept exactly as given: it fixes the column
/// order of [`develop_matrix`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DifferenceFamily {
    v: usize,
    lambda: u64,
    base_blocks: Vec<Vec<usize>>,
}

impl DifferenceFamily {
    pub fn new(v: usize, lambda: u64, base_blocks: Vec<Vec<usize>>) -> Result<Self> {
        let Some(first) = base_blocks.first() else {
            return Err(Error::structural("difference family has no base blocks", vec![]));
        };
        let k = first.len();
        let mut offenders = Vec::new();
        if v < 2 {
            offenders.push(format!("group order {v} is below 2"));
        }
        if k < 2 {
            offenders.push(format!("base blocks have size {k}, need at least 2"));
        }
        for (i, block) in base_blocks.iter().enumerate() {
            if block.len() != k {
                offenders.push(format!("base block {i} has {} elements, expected {k}", block.len()));
            }
            for &x in block {
                if x >= v {
                    offenders.push(format!("base block {i} has element {x} outside 0..{v}"));
                }
            }
            let distinct: BTreeSet<_> = block.iter().collect();
            if distinct.len() != block.len() {
                offenders.push(format!("base block {i} repeats an element"));
            }
        }
        if lambda == 0 {
            offenders.push("lambda must be positive".to_string());
        }
        if !offenders.is_empty() {
            return Err(Error::structural("invalid difference family", offenders));
        }
        Ok(DifferenceFamily {
            v,
            lambda,
            base_blocks,
        })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.base_blocks[0].len()
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn base_blocks(&self) -> &[Vec<usize>] {
        &self.base_blocks
    }

    /// Number of base blocks, l = λ(v−1)/(k(k−1)) for a valid family.
    pub fn l(&self) -> usize {
        self.base_blocks.len()
    }

    /// Translates `D_i + g` in (block, shift) order, coordinates in base order.
    fn translates(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.base_blocks.iter().flat_map(move |block| {
            (0..self.v).map(move |g| block.iter().map(|&x| (x + g) % self.v).collect())
        })
    }

    fn check_developable(&self) -> Result<()> {
        let report = verify_df(self);
        if !report.valid {
            return Err(Error::Domain(format!(
                "not a ({},{},{}) difference family: {}",
                self.v,
                self.k(),
                self.lambda,
                report.failures[0]
            )));
        }
        for (i, block) in self.base_blocks.iter().enumerate() {
            if let Some(g) = stabilizer(block, self.v) {
                return Err(Error::Unsupported(format!(
                    "base block {i} has a short orbit (fixed by translation {g})"
                )));
            }
        }
        Ok(())
    }
}

/// Smallest nonzero g with D + g = D, if any.
fn stabilizer(block: &[usize], v: usize) -> Option<usize> {
    let set: BTreeSet<usize> = block.iter().copied().collect();
    (1..v)
        .filter(|g| v.is_multiple_of(*g))
        .find(|&g| block.iter().all(|&x| set.contains(&((x + g) % v))))
}

/// Tallies all signed differences x − y (mod v) within each base block.
pub fn verify_df(df: &DifferenceFamily) -> VerificationReport {
    let v = df.v;
    let mut tally = vec![0u64; v];
    for block in &df.base_blocks {
        for &x in block {
            for &y in block {
                if x != y {
                    tally[(x + v - y) % v] += 1;
                }
            }
        }
    }
    let mut failures = Vec::new();
    let mut failure_count = 0u64;
    for (residue, &observed) in tally.iter().enumerate().skip(1) {
        if observed != df.lambda {
            failure_count += 1;
            if failures.len() < MAX_WITNESSES {
                failures.push(Failure::DifferenceCount {
                    residue,
                    observed,
                    expected: df.lambda,
                });
            }
        }
    }
    let first = tally[1];
    let inferred = (first > 0 && tally[1..].iter().all(|&c| c == first)).then_some(first);
    VerificationReport::from_failures(inferred, failures, failure_count)
}

/// All translates of the base blocks: a 2-(v,k,λ) design.
pub fn develop(df: &DifferenceFamily) -> Result<BlockDesign> {
    df.check_developable()?;
    BlockDesign::new(df.v, df.translates().collect()).map_err(|e| match e {
        Error::Structural { offenders, .. } => Error::Unsupported(format!(
            "development repeats blocks: {}",
            offenders.join("; ")
        )),
        other => other,
    })
}

/// The encoding matrix read straight off the orbits: row (i, g) is
/// `(d_i1 + g, …, d_ik + g)`. Each column of each orbit runs through every
/// residue once, so the matrix is balanced without any reordering.
pub fn develop_matrix(df: &DifferenceFamily) -> Result<EncodingMatrix> {
    df.check_developable()?;
    EncodingMatrix::new(df.v, df.k(), df.translates().collect()).map_err(|e| match e {
        Error::Structural { offenders, .. } => Error::Unsupported(format!(
            "development repeats blocks: {}",
            offenders.join("; ")
        )),
        other => other,
    })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128 % u128::from(m);
    let m128 = u128::from(m);
    let mut b = u128::from(base % m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Smallest primitive root modulo the prime `q`.
pub fn primitive_root(q: u64) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::domain(format!("{q} is not prime")));
    }
    if q == 2 {
        return Ok(1);
    }
    let factors = prime_factors(q - 1);
    (2..q)
        .find(|&g| factors.iter().all(|&p| pow_mod(g, (q - 1) / p, q) != 1))
        .ok_or_else(|| Error::Internal(format!("no primitive root found mod {q}")))
}

/// Netto's CDF(q,3,1) for a prime q ≡ 1 (mod 6): base blocks
/// {ω^i, ω^(i+2d), ω^(i+4d)} for i < d = (q−1)/6, ω the smallest primitive
/// root. The result is checked before it is returned.
pub fn netto_triples(q: u64) -> Result<DifferenceFamily> {
    if !is_prime(q) {
        return Err(Error::domain(format!("{q} is not prime")));
    }
    if q % 6 != 1 {
        return Err(Error::domain(format!("{q} is not congruent to 1 mod 6")));
    }
    let omega = primitive_root(q)?;
    let d = (q - 1) / 6;
    let blocks = (0..d)
        .map(|i| {
            [i, i + 2 * d, i + 4 * d]
                .iter()
                .map(|&e| pow_mod(omega, e, q) as usize)
                .collect()
        })
        .collect();
    let df = DifferenceFamily::new(q as usize, 1, blocks)?;
    let report = verify_df(&df);
    if !report.valid {
        return Err(Error::Internal(format!(
            "Netto construction for q = {q} failed verification: {}",
            report.failures[0]
        )));
    }
    Ok(df)
}
