//! Verification-oracle games. The opponent submits messages to an oracle
//! that answers accept/reject under the secret key.
//!
//! Values are computed as integer win counts over the b equiprobable keys
//! and divided by b at the end.

use std::collections::HashMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::bits::Bits;
use super::spoofing::OrderValue;
use super::system::{ratio, SecrecySystem};
use crate::combin::{binomial, Budget};
use crate::io::rational;
use crate::{Error, Result};

fn check_order(system: &SecrecySystem, i: usize, budget: Budget) -> Result<()> {
    let v = system.v();
    if i >= v {
        return Err(Error::domain(format!("order i = {i} must be below v = {v}")));
    }
    let work = binomial(v as u64, i as u64 + 1) * system.b();
    budget.check("game-tree work C(v,i+1)*b", &work)
}

struct Offline<'a> {
    system: &'a SecrecySystem,
    all_keys: Bits,
    has_null_message: bool,
    memo: HashMap<(Bits, Bits, usize), u64>,
}

impl Offline<'_> {
    /// Best number of winning keys from state (accepted, posterior) with n
    /// queries left.
    fn wins(&mut self, accepted: &Bits, posterior: &Bits, n: usize) -> u64 {
        if posterior.is_empty() {
            return 0;
        }
        let message_keys = self.system.message_keys();
        if n == 0 {
            return (0..self.system.v())
                .filter(|&m| !accepted.contains(m))
                .map(|m| posterior.and_count(&message_keys[m]))
                .max()
                .unwrap_or(0);
        }
        let memo_key = (accepted.clone(), posterior.clone(), n);
        if let Some(&w) = self.memo.get(&memo_key) {
            return w;
        }
        // A query that cannot change the state: repeating an earlier one, or
        // a message valid under no remaining key.
        let can_waste =
            !accepted.is_empty() || *posterior != self.all_keys || self.has_null_message;
        let mut best = if can_waste {
            self.wins(accepted, posterior, n - 1)
        } else {
            0
        };
        for (q, keys) in message_keys.iter().enumerate() {
            if accepted.contains(q) {
                continue;
            }
            let hit = posterior.and(keys);
            if hit.is_empty() {
                continue;
            }
            let miss = posterior.and_not(keys);
            let w = self.wins(&accepted.with(q), &hit, n - 1) + self.wins(accepted, &miss, n - 1);
            best = best.max(w);
        }
        self.memo.insert(memo_key, best);
        best
    }
}

/// Offline game: i adaptive queries, then one spoof that is not a
/// previously accepted query. Exact optimal success probability.
pub fn voracle_offline_value(system: &SecrecySystem, i: usize, budget: Budget) -> Result<BigRational> {
    check_order(system, i, budget)?;
    let b = system.b();
    let mut game = Offline {
        system,
        all_keys: Bits::full(b),
        has_null_message: system.message_keys().iter().any(Bits::is_empty),
        memo: HashMap::new(),
    };
    let w = game.wins(&Bits::empty(system.v()), &Bits::full(b), i);
    Ok(ratio(w, b as u64))
}

struct Online<'a> {
    system: &'a SecrecySystem,
    memo: HashMap<(Bits, usize), u64>,
}

impl Online<'_> {
    /// Best number of keys under which one of n submissions is accepted,
    /// given that every earlier submission was rejected.
    fn wins(&mut self, posterior: &Bits, n: usize) -> u64 {
        if n == 0 || posterior.is_empty() {
            return 0;
        }
        if let Some(&w) = self.memo.get(&(posterior.clone(), n)) {
            return w;
        }
        let mut best = 0;
        for keys in self.system.message_keys() {
            let hits = posterior.and_count(keys);
            if hits == 0 {
                continue;
            }
            let rest = if n == 1 {
                0
            } else {
                self.wins(&posterior.and_not(keys), n - 1)
            };
            best = best.max(hits + rest);
        }
        self.memo.insert((posterior.clone(), n), best);
        best
    }
}

/// Online game: up to i+1 submissions, won at the first acceptance. Exact
/// optimal success probability.
pub fn voracle_online_value(system: &SecrecySystem, i: usize, budget: Budget) -> Result<BigRational> {
    check_order(system, i, budget)?;
    let b = system.b();
    let mut game = Online {
        system,
        memo: HashMap::new(),
    };
    let w = game.wins(&Bits::full(b), i + 1);
    Ok(ratio(w, b as u64))
}

pub fn offline_bound(k: usize, v: usize) -> BigRational {
    ratio(k as u64, v as u64)
}

/// 1 − C(v−k, i+1)/C(v, i+1).
pub fn online_bound(k: usize, v: usize, i: usize) -> BigRational {
    let n = i as u64 + 1;
    let all = binomial(v as u64, n);
    let miss = binomial((v - k) as u64, n);
    BigRational::new((&all - &miss).into(), all.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOrder {
    pub i: usize,
    #[serde(with = "rational")]
    pub offline: BigRational,
    #[serde(with = "rational")]
    pub offline_bound: BigRational,
    pub offline_tight: bool,
    #[serde(with = "rational")]
    pub online: BigRational,
    #[serde(with = "rational")]
    pub online_bound: BigRational,
    pub online_tight: bool,
}

impl OracleOrder {
    /// Offline tightness and online tightness must agree.
    pub fn equivalent(&self) -> bool {
        self.offline_tight == self.online_tight
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub orders: Vec<OracleOrder>,
}

pub fn oracle_order(system: &SecrecySystem, i: usize, budget: Budget) -> Result<OracleOrder> {
    let (k, v) = (system.k(), system.v());
    let offline = voracle_offline_value(system, i, budget)?;
    let online = voracle_online_value(system, i, budget)?;
    let offline_bound = offline_bound(k, v);
    let online_bound = online_bound(k, v, i);
    Ok(OracleOrder {
        i,
        offline_tight: offline == offline_bound,
        online_tight: online == online_bound,
        offline,
        offline_bound,
        online,
        online_bound,
    })
}

pub fn oracle_report(system: &SecrecySystem, orders: &[usize], budget: Budget) -> Result<OracleReport> {
    let orders = orders
        .iter()
        .map(|&i| oracle_order(system, i, budget))
        .collect::<Result<_>>()?;
    Ok(OracleReport { orders })
}

/// True iff the offline value meets k/v exactly when the online value
/// meets its closed form.
pub fn oracle_equivalence_check(system: &SecrecySystem, i: usize, budget: Budget) -> Result<bool> {
    Ok(oracle_order(system, i, budget)?.equivalent())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleModel {
    Offline,
    Online,
}

/// Values and bounds of one oracle game at each requested order.
pub fn oracle_values(
    system: &SecrecySystem,
    model: OracleModel,
    orders: &[usize],
    budget: Budget,
) -> Result<Vec<OrderValue>> {
    let (k, v) = (system.k(), system.v());
    orders
        .iter()
        .map(|&i| {
            let (value, bound) = match model {
                OracleModel::Offline => (voracle_offline_value(system, i, budget)?, offline_bound(k, v)),
                OracleModel::Online => (voracle_online_value(system, i, budget)?, online_bound(k, v, i)),
            };
            Ok(OrderValue {
                i,
                tight: value == bound,
                value,
                bound,
            })
        })
        .collect()
}
