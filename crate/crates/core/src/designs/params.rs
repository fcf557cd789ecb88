//! Exact parameter arithmetic for t-(v,k,λ) designs.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combin::{binomial, binomial_big};
use crate::{Error, Result};

/// The tuple (t, v, k, λ) of an admissible design.
///
/// `v` and `λ` are arbitrary precision so that existence-theorem parameter
/// families (with astronomically large point sets) can be handled exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DesignParameters {
    t: u32,
    v: BigUint,
    k: u32,
    lambda: BigUint,
}

impl DesignParameters {
    /// Validates `1 ≤ t ≤ k ≤ v`, `λ ≥ 1`, and that every λ_s is an integer.
    pub fn new(t: u32, v: impl Into<BigUint>, k: u32, lambda: impl Into<BigUint>) -> Result<Self> {
        let v = v.into();
        let lambda = lambda.into();
        check_ranges(t, &v, k, &lambda)?;
        let bad = Self::non_integral(t, &v, k, &lambda);
        if !bad.is_empty() {
            return Err(Error::Inadmissible(bad));
        }
        Ok(DesignParameters { t, v, k, lambda })
    }

    /// The values λ_s (0 ≤ s ≤ t) that fail to be integers. Ranges must
    /// already satisfy `t ≤ k ≤ v`.
    pub fn non_integral(t: u32, v: &BigUint, k: u32, lambda: &BigUint) -> Vec<(u32, BigRational)> {
        (0..=t)
            .map(|s| (s, lambda_s_unchecked(t, v, k, lambda, s)))
            .filter(|(_, value)| !value.is_integer())
            .collect()
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn v(&self) -> &BigUint {
        &self.v
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lambda(&self) -> &BigUint {
        &self.lambda
    }

    /// λ_s as an integer; `s ≤ t` is the caller's responsibility.
    fn lambda_int(&self, s: u32) -> BigUint {
        lambda_s_unchecked(self.t, &self.v, self.k, &self.lambda, s)
            .to_integer()
            .to_biguint()
            .expect("admissible λ_s is a non-negative integer")
    }

    /// Number of blocks, b = λ_0.
    pub fn block_count(&self) -> BigUint {
        self.lambda_int(0)
    }

    /// Replication number, r = λ_1.
    pub fn replication(&self) -> BigUint {
        self.lambda_int(1)
    }

    /// Checks bk = vr, C(v,t)·λ = b·C(k,t) and, for t ≥ 2, r(k−1) = λ_2(v−1).
    pub fn counting_identities_hold(&self) -> bool {
        let b = self.block_count();
        let k = BigUint::from(self.k);
        let t = u64::from(self.t);
        let mut ok = binomial_big(&self.v, t) * &self.lambda == &b * binomial(u64::from(self.k), t);
        if self.t >= 1 {
            let r = self.lambda_int(1);
            ok &= &b * &k == &self.v * &r;
            if self.t >= 2 {
                let lambda2 = self.lambda_int(2);
                ok &= r * (&k - 1u32) == lambda2 * (&self.v - 1u32);
            }
        }
        ok
    }
}

impl fmt::Display for DesignParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-({},{},{})", self.t, self.v, self.k, self.lambda)
    }
}

fn check_ranges(t: u32, v: &BigUint, k: u32, lambda: &BigUint) -> Result<()> {
    if t == 0 {
        return Err(Error::domain("strength t must be positive"));
    }
    if lambda.is_zero() {
        return Err(Error::domain("index lambda must be positive"));
    }
    if t > k || &BigUint::from(k) > v {
        return Err(Error::domain(format!(
            "need t <= k <= v, got t={t}, k={k}, v={v}"
        )));
    }
    Ok(())
}

fn lambda_s_unchecked(t: u32, v: &BigUint, k: u32, lambda: &BigUint, s: u32) -> BigRational {
    let d = u64::from(t - s);
    let num = lambda * binomial_big(&(v - BigUint::from(s)), d);
    let den = binomial(u64::from(k - s), d);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Number of blocks through any s points: λ·C(v−s, t−s)/C(k−s, t−s).
pub fn lambda_s(params: &DesignParameters, s: u32) -> Result<BigRational> {
    if s > params.t {
        return Err(Error::domain(format!(
            "s = {s} is outside 0..={}",
            params.t
        )));
    }
    Ok(lambda_s_unchecked(params.t, &params.v, params.k, &params.lambda, s))
}

/// Lower bound C(v,t)/C(k,t) on the number of keys of a (t−1)-fold secure system.
pub fn massey_schobi_bound(v: impl Into<BigUint>, k: u64, t: u64) -> Result<BigRational> {
    let v = v.into();
    if t > k || BigUint::from(k) > v {
        return Err(Error::domain(format!(
            "need t <= k <= v, got t={t}, k={k}, v={v}"
        )));
    }
    Ok(BigRational::new(
        BigInt::from(binomial_big(&v, t)),
        BigInt::from(binomial(k, t)),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimalityClass {
    /// λ = 1: meets the key-count lower bound.
    Optimal,
    /// 2 ≤ λ ≤ 10.
    NearOptimal,
    Other,
}

impl fmt::Display for OptimalityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptimalityClass::Optimal => "optimal",
            OptimalityClass::NearOptimal => "near-optimal",
            OptimalityClass::Other => "other",
        })
    }
}

/// Classification by λ alone (b = λ·b_opt).
pub fn optimality_class(params: &DesignParameters) -> OptimalityClass {
    classify_lambda(&params.lambda)
}

pub fn classify_lambda(lambda: &BigUint) -> OptimalityClass {
    if lambda.is_one() {
        OptimalityClass::Optimal
    } else if *lambda >= BigUint::from(2u32) && *lambda <= BigUint::from(10u32) {
        OptimalityClass::NearOptimal
    } else {
        OptimalityClass::Other
    }
}

/// Whether v divides b, with the witness (b, b mod v).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisibility {
    pub holds: bool,
    pub blocks: BigUint,
    pub remainder: BigUint,
}

pub fn divisibility_check(params: &DesignParameters) -> Divisibility {
    let blocks = params.block_count();
    let remainder = &blocks % &params.v;
    Divisibility {
        holds: remainder.is_zero(),
        blocks,
        remainder,
    }
}

/// Parameters t-(v, t+1, (t+1)!^(2t+1)) of the existence family for
/// v ≡ t (mod (t+1)!^(2t+1)), with the key count computed two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeirlinckParams {
    pub params: DesignParameters,
    pub modulus: BigUint,
    /// (t+1)!^(2t) · t! · C(v, t)
    pub blocks_closed_form: BigUint,
    /// λ·C(v,t)/C(k,t)
    pub blocks_from_lambda: BigUint,
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// (t+1)!^(2t+1), the congruence modulus and index of the family.
pub fn teirlinck_modulus(t: u32) -> BigUint {
    num_traits::pow(factorial(t + 1), 2 * t as usize + 1)
}

/// Smallest v with v ≡ t (mod (t+1)!^(2t+1)) and v ≥ t+1.
pub fn teirlinck_smallest_v(t: u32) -> BigUint {
    teirlinck_modulus(t) + t
}

pub fn teirlinck_params(t: u32, v: &BigUint) -> Result<TeirlinckParams> {
    if t == 0 {
        return Err(Error::domain("strength t must be positive"));
    }
    let modulus = teirlinck_modulus(t);
    if v < &BigUint::from(t + 1) {
        return Err(Error::domain(format!("need v >= t+1 = {}, got {v}", t + 1)));
    }
    if v.mod_floor(&modulus) != BigUint::from(t) % &modulus {
        return Err(Error::domain(format!(
            "v = {v} is not congruent to t = {t} modulo (t+1)!^(2t+1) = {modulus}"
        )));
    }
    let params = DesignParameters::new(t, v.clone(), t + 1, modulus.clone())?;
    let choose_vt = binomial_big(v, u64::from(t));
    let blocks_closed_form =
        num_traits::pow(factorial(t + 1), 2 * t as usize) * factorial(t) * &choose_vt;
    let blocks_from_lambda = params.block_count();
    if blocks_closed_form != blocks_from_lambda {
        return Err(Error::Internal(format!(
            "closed-form key count {blocks_closed_form} disagrees with {blocks_from_lambda}"
        )));
    }
    Ok(TeirlinckParams {
        params,
        modulus,
        blocks_closed_form,
        blocks_from_lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(t: u32, v: u64, k: u32, lambda: u64) -> DesignParameters {
        DesignParameters::new(t, v, k, lambda).unwrap()
    }

    fn int(x: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn lambda_s_examples() {
        let p = params(2, 13, 3, 1);
        assert_eq!(lambda_s(&p, 1).unwrap(), int(6));
        assert_eq!(lambda_s(&p, 2).unwrap(), int(1));
        assert_eq!(lambda_s(&params(3, 5, 3, 1), 0).unwrap(), int(10));
        assert!(matches!(lambda_s(&p, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn inadmissible_parameters_list_offenders() {
        // 2-(8,3,1): r = 7/2, b = 28/3.
        match DesignParameters::new(2, 8u32, 3, 1u32) {
            Err(Error::Inadmissible(bad)) => {
                let ss: Vec<u32> = bad.iter().map(|(s, _)| *s).collect();
                assert_eq!(ss, vec![0, 1]);
            }
            other => panic!("expected inadmissible, got {other:?}"),
        }
        assert!(matches!(
            DesignParameters::new(4, 5u32, 3, 1u32),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            DesignParameters::new(2, 7u32, 3, 0u32),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn bound_examples() {
        assert_eq!(massey_schobi_bound(13u32, 3, 2).unwrap(), int(26));
        assert_eq!(massey_schobi_bound(9u32, 9, 4).unwrap(), int(1));
        assert_eq!(massey_schobi_bound(19u32, 7, 6).unwrap(), int(3876));
        assert!(massey_schobi_bound(5u32, 7, 2).is_err());
    }

    #[test]
    fn optimality_examples() {
        assert_eq!(optimality_class(&params(2, 13, 3, 1)), OptimalityClass::Optimal);
        assert_eq!(
            optimality_class(&params(6, 19, 7, 4)),
            OptimalityClass::NearOptimal
        );
        assert_eq!(optimality_class(&params(8, 31, 10, 100)), OptimalityClass::Other);
    }

    #[test]
    fn divisibility_examples() {
        let d = divisibility_check(&params(2, 13, 3, 1));
        assert!(d.holds);
        assert_eq!(d.blocks, BigUint::from(26u32));
        let d = divisibility_check(&params(2, 9, 3, 1));
        assert!(!d.holds);
        assert_eq!(d.blocks, BigUint::from(12u32));
        assert_eq!(d.remainder, BigUint::from(3u32));
        assert!(divisibility_check(&params(3, 5, 3, 1)).holds);
    }

    #[test]
    fn teirlinck_t2() {
        let v = BigUint::from(7778u32);
        let tp = teirlinck_params(2, &v).unwrap();
        assert_eq!(tp.params.lambda(), &BigUint::from(7776u32));
        assert_eq!(tp.params.k(), 3);
        assert_eq!(tp.blocks_closed_form, BigUint::from(2592u32) * binomial(7778, 2));
        assert!(matches!(
            teirlinck_params(2, &BigUint::from(7777u32)),
            Err(Error::Domain(msg)) if msg.contains("7776")
        ));
    }

    #[test]
    fn teirlinck_t1_and_t7() {
        let tp = teirlinck_params(1, &teirlinck_smallest_v(1)).unwrap();
        assert_eq!(tp.params.lambda(), &BigUint::from(8u32));
        assert_eq!(tp.params.v(), &BigUint::from(9u32));

        let big = num_traits::pow(BigUint::from(40320u32), 15);
        assert_eq!(teirlinck_smallest_v(7), &big + 7u32);
        let tp = teirlinck_params(7, &(&big + 7u32)).unwrap();
        assert_eq!(tp.params.lambda(), &big);
        assert_eq!(tp.params.k(), 8);
    }

    #[test]
    fn counting_identities_on_known_parameters() {
        for p in [
            params(2, 13, 3, 1),
            params(3, 5, 3, 1),
            params(6, 19, 7, 4),
            params(8, 31, 10, 100),
            params(1, 6, 2, 1),
        ] {
            assert!(p.counting_identities_hold(), "{p}");
        }
    }
}
