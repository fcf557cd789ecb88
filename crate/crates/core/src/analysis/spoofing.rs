use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::system::{ratio, SecrecySystem};
use crate::combin::{binomial, choose, Budget};
use crate::io::rational;
use crate::{Error, Result};

/// Exact optimal success probability of a spoofing attack of order i.
///
/// Every (key, i-subset of source states) pair is equally likely. For each
/// realizable observation O the opponent plays the unseen message valid
/// under the most keys consistent with O, so
/// P_di = Σ_O max_{m ∉ O} #{e : O ∪ {m} ⊆ M(e)} / (b·C(k,i)).
pub fn deception_probability(system: &SecrecySystem, i: usize, budget: Budget) -> Result<BigRational> {
    let (v, k, b) = (system.v(), system.k(), system.b());
    if i >= k {
        return Err(Error::domain(format!("order i = {i} must be below k = {k}")));
    }
    let events = binomial(k as u64, i as u64) * b;
    budget.check("key/observation pairs b*C(k,i)", &events)?;

    let mut observations: BTreeSet<Vec<usize>> = BTreeSet::new();
    for row in system.matrix().rows() {
        let mut set = row.clone();
        set.sort_unstable();
        observations.extend(choose(&set, i));
    }

    let mut wins = 0u64;
    let mut tally = vec![0u64; v];
    for obs in &observations {
        let mut consistent = super::bits::Bits::full(b);
        for &m in obs {
            consistent = consistent.and(&system.message_keys()[m]);
        }
        tally.iter_mut().for_each(|c| *c = 0);
        for e in consistent.ones() {
            for m in system.key_messages()[e].ones() {
                tally[m] += 1;
            }
        }
        for &m in obs {
            tally[m] = 0;
        }
        wins += tally.iter().max().copied().unwrap_or(0);
    }
    let den = u64::try_from(&events).map_err(|_| Error::Internal("event count overflow".into()))?;
    Ok(ratio(wins, den))
}

/// Lower bound (k−i)/(v−i) on P_di.
pub fn spoofing_bound(k: usize, v: usize, i: usize) -> BigRational {
    ratio((k - i) as u64, (v - i) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderValue {
    pub i: usize,
    #[serde(with = "rational")]
    pub value: BigRational,
    #[serde(with = "rational")]
    pub bound: BigRational,
    pub tight: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeceptionReport {
    pub orders: Vec<OrderValue>,
    /// Largest t with every order 0..=t computed and tight; None if order 0
    /// is not tight or was not computed.
    pub security_order: Option<usize>,
}

pub fn deception_report(
    system: &SecrecySystem,
    orders: &[usize],
    budget: Budget,
) -> Result<DeceptionReport> {
    let mut out = Vec::with_capacity(orders.len());
    for &i in orders {
        let value = deception_probability(system, i, budget)?;
        let bound = spoofing_bound(system.k(), system.v(), i);
        out.push(OrderValue {
            i,
            tight: value == bound,
            value,
            bound,
        });
    }
    let mut security_order = None;
    for t in 0.. {
        match out.iter().find(|o| o.i == t) {
            Some(o) if o.tight => security_order = Some(t),
            _ => break,
        }
    }
    Ok(DeceptionReport {
        orders: out,
        security_order,
    })
}

/// Largest t ≤ max_i with P_di tight for every i ≤ t; None when P_d0 is
/// not tight.
pub fn security_order(system: &SecrecySystem, max_i: usize, budget: Budget) -> Result<Option<usize>> {
    if max_i >= system.k() {
        return Err(Error::domain(format!(
            "max order {max_i} must be below k = {}",
            system.k()
        )));
    }
    let mut order = None;
    for i in 0..=max_i {
        if deception_probability(system, i, budget)? != spoofing_bound(system.k(), system.v(), i) {
            break;
        }
        order = Some(i);
    }
    Ok(order)
}
