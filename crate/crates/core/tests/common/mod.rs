//! Fixtures and brute-force reference evaluators shared by the integration
//! tests. The evaluators work on plain row lists and share no code with the
//! library's game solvers.

#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;

/// The 26×3 encoding matrix of CDF(13,3,1) = {0,1,4}, {0,2,7}, row by row.
pub const CDF13_ROWS: [[usize; 3]; 26] = [
    [0, 1, 4],
    [1, 2, 5],
    [2, 3, 6],
    [3, 4, 7],
    [4, 5, 8],
    [5, 6, 9],
    [6, 7, 10],
    [7, 8, 11],
    [8, 9, 12],
    [9, 10, 0],
    [10, 11, 1],
    [11, 12, 2],
    [12, 0, 3],
    [0, 2, 7],
    [1, 3, 8],
    [2, 4, 9],
    [3, 5, 10],
    [4, 6, 11],
    [5, 7, 12],
    [6, 8, 0],
    [7, 9, 1],
    [8, 10, 2],
    [9, 11, 3],
    [10, 12, 4],
    [11, 0, 5],
    [12, 1, 6],
];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn q(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn contains_all(row: &[usize], set: &[usize]) -> bool {
    set.iter().all(|m| row.contains(m))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// P_di by enumerating every (key, source subset) event and, for each
/// distinct observation, scanning every candidate spoof over every key.
pub fn brute_classic(rows: &[Vec<usize>], v: usize, i: usize) -> BigRational {
    let k = rows[0].len();
    let col_sets = subsets(k, i);
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for row in rows {
        for cols in &col_sets {
            let mut obs: Vec<usize> = cols.iter().map(|&c| row[c]).collect();
            obs.sort();
            if !seen.contains(&obs) {
                seen.push(obs);
            }
        }
    }
    let mut total = 0u64;
    for obs in &seen {
        let best = (0..v)
            .filter(|m| !obs.contains(m))
            .map(|m| {
                let mut with = obs.clone();
                with.push(m);
                rows.iter().filter(|r| contains_all(r, &with)).count() as u64
            })
            .max()
            .unwrap_or(0);
        total += best;
    }
    q(total, (rows.len() * col_sets.len()) as u64)
}

/// Offline oracle game by expectimax over query histories. Any message may
/// be queried, repeats included; the spoof may not be an accepted query.
pub fn brute_offline(rows: &[Vec<usize>], v: usize, i: usize) -> BigRational {
    fn go(rows: &[Vec<usize>], v: usize, history: &mut Vec<(usize, bool)>, left: usize) -> u64 {
        let consistent: Vec<&Vec<usize>> = rows
            .iter()
            .filter(|r| history.iter().all(|&(m, acc)| r.contains(&m) == acc))
            .collect();
        if left == 0 {
            return (0..v)
                .filter(|m| !history.iter().any(|&(h, acc)| acc && h == *m))
                .map(|m| consistent.iter().filter(|r| r.contains(&m)).count() as u64)
                .max()
                .unwrap_or(0);
        }
        let mut best = 0;
        for m in 0..v {
            let mut total = 0;
            for acc in [true, false] {
                if consistent.iter().any(|r| r.contains(&m) == acc) {
                    history.push((m, acc));
                    total += go(rows, v, history, left - 1);
                    history.pop();
                }
            }
            best = best.max(total);
        }
        best
    }
    q(go(rows, v, &mut Vec::new(), i), rows.len() as u64)
}

/// Online oracle game: i+1 submissions, won on the first acceptance.
pub fn brute_online(rows: &[Vec<usize>], v: usize, i: usize) -> BigRational {
    fn go(rows: &[Vec<usize>], v: usize, rejected: &mut Vec<usize>, left: usize) -> u64 {
        if left == 0 {
            return 0;
        }
        let mut best = 0;
        for m in 0..v {
            let alive = |r: &&Vec<usize>| !rejected.iter().any(|x| r.contains(x));
            let hits = rows.iter().filter(alive).filter(|r| r.contains(&m)).count() as u64;
            rejected.push(m);
            let rest = go(rows, v, rejected, left - 1);
            rejected.pop();
            best = best.max(hits + rest);
        }
        best
    }
    q(go(rows, v, &mut Vec::new(), i + 1), rows.len() as u64)
}

/// Rows of the development of base blocks mod v, in (block, shift) order.
pub fn develop_rows(v: usize, base: &[&[usize]]) -> Vec<Vec<usize>> {
    base.iter()
        .flat_map(|b| (0..v).map(move |g| b.iter().map(|x| (x + g) % v).collect()))
        .collect()
}
