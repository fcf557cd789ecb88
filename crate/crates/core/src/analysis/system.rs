use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::bits::Bits;
use crate::balancing::EncodingMatrix;

/// An encoding matrix under the fixed model: keys equiprobable over the b
/// rows, source states equiprobable over the k columns.
#[derive(Debug, Clone)]
pub struct SecrecySystem {
    matrix: EncodingMatrix,
    /// Messages valid under each key.
    key_messages: Vec<Bits>,
    /// Keys under which each message is valid.
    message_keys: Vec<Bits>,
}

impl SecrecySystem {
    pub fn new(matrix: EncodingMatrix) -> Self {
        let (v, b) = (matrix.v(), matrix.b());
        let mut key_messages = vec![Bits::empty(v); b];
        let mut message_keys = vec![Bits::empty(b); v];
        for (e, row) in matrix.rows().iter().enumerate() {
            for &m in row {
                key_messages[e].insert(m);
                message_keys[m].insert(e);
            }
        }
        SecrecySystem {
            matrix,
            key_messages,
            message_keys,
        }
    }

    pub fn matrix(&self) -> &EncodingMatrix {
        &self.matrix
    }

    pub fn v(&self) -> usize {
        self.matrix.v()
    }

    pub fn k(&self) -> usize {
        self.matrix.k()
    }

    pub fn b(&self) -> usize {
        self.matrix.b()
    }

    /// p_E(e) for every key.
    pub fn key_distribution(&self) -> Vec<BigRational> {
        vec![ratio(1, self.b() as u64); self.b()]
    }

    /// p_S(s) for every source state.
    pub fn source_distribution(&self) -> Vec<BigRational> {
        vec![ratio(1, self.k() as u64); self.k()]
    }

    /// Induced message distribution p_M(m) = (occurrences of m) / (b·k).
    pub fn message_distribution(&self) -> Vec<BigRational> {
        let total = (self.b() * self.k()) as u64;
        self.message_keys
            .iter()
            .map(|keys| ratio(keys.count(), total))
            .collect()
    }

    pub(crate) fn key_messages(&self) -> &[Bits] {
        &self.key_messages
    }

    pub(crate) fn message_keys(&self) -> &[Bits] {
        &self.message_keys
    }
}

pub(crate) fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A message whose frequency differs between two columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecrecyWitness {
    pub message: usize,
    pub column_a: usize,
    pub count_a: usize,
    pub column_b: usize,
    pub count_b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecrecyCheck {
    pub perfect: bool,
    pub witness: Option<SecrecyWitness>,
}

/// Under equiprobable keys, perfect secrecy holds iff every message occurs
/// equally often in every column.
pub fn perfect_secrecy_check(matrix: &EncodingMatrix) -> SecrecyCheck {
    let witness = matrix
        .column_counts()
        .into_iter()
        .enumerate()
        .find_map(|(m, counts)| {
            let first = counts[0];
            counts
                .iter()
                .position(|&c| c != first)
                .map(|col| SecrecyWitness {
                    message: m,
                    column_a: 0,
                    count_a: first,
                    column_b: col,
                    count_b: counts[col],
                })
        });
    SecrecyCheck {
        perfect: witness.is_none(),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use num_traits::One;

    use super::*;

    fn fano() -> EncodingMatrix {
        let rows = (0..7)
            .map(|g| [1, 2, 4].iter().map(|x| (x + g) % 7).collect())
            .collect();
        EncodingMatrix::new(7, 3, rows).unwrap()
    }

    #[test]
    fn distributions_sum_to_one() {
        let s = SecrecySystem::new(fano());
        for dist in [
            s.key_distribution(),
            s.source_distribution(),
            s.message_distribution(),
        ] {
            assert!(dist.iter().sum::<BigRational>().is_one());
        }
        assert_eq!(s.message_distribution()[0], ratio(1, 7));
    }

    #[test]
    fn developed_fano_is_perfect() {
        assert!(perfect_secrecy_check(&fano()).perfect);
    }

    #[test]
    fn single_row_is_not_perfect() {
        let m = EncodingMatrix::new(5, 3, vec![vec![0, 1, 2]]).unwrap();
        let c = perfect_secrecy_check(&m);
        assert!(!c.perfect);
        assert_eq!(
            c.witness,
            Some(SecrecyWitness {
                message: 0,
                column_a: 0,
                count_a: 1,
                column_b: 1,
                count_b: 0
            })
        );
        let m = EncodingMatrix::new(1, 1, vec![vec![0]]).unwrap();
        assert!(perfect_secrecy_check(&m).perfect);
    }
}
