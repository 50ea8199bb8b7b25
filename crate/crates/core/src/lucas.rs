//! Lucas sequences `u_k = (alpha^k - beta^k) / (alpha - beta)` and their
//! primitive divisors.
//!
//! A pair is given by `P = alpha + beta`, `Q = alpha * beta`. A prime `p` is a
//! primitive divisor of `u_k` when `p | u_k` but `p` does not divide
//! `(alpha - beta)^2 u_1 ... u_{k-1}`, where `(alpha - beta)^2 = P^2 - 4Q`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_probable_prime, smallest_factor_below};
use crate::error::{Error, Result};

/// Trial-division ceiling used when naming the least primitive prime.
pub const TRIAL_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LucasPair {
    p: i64,
    q: i64,
}

impl LucasPair {
    /// Validates coprimality, non-zero parameters and that `alpha/beta` is not
    /// a root of unity.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::invalid(format!("({p}, {q}): P and Q must be non-zero")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::invalid(format!("({p}, {q}): P and Q must be coprime")));
        }
        let p2 = p as i128 * p as i128;
        let q = q as i128;
        for m in 1..=4 {
            if p2 == m * q {
                return Err(Error::Degenerate(format!(
                    "({p}, {q}): alpha/beta is a root of unity (P^2 = {m}Q)"
                )));
            }
        }
        Ok(LucasPair { p, q: q as i64 })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `(alpha - beta)^2 = P^2 - 4Q`.
    pub fn discriminant(&self) -> i128 {
        self.p as i128 * self.p as i128 - 4 * self.q as i128
    }

    /// Representative of the class under `(alpha, beta) -> (-alpha, -beta)`.
    pub fn canonical(&self) -> LucasPair {
        LucasPair { p: self.p.abs(), q: self.q }
    }
}

/// `u_0, ..., u_k`.
pub fn lucas_sequence(pair: &LucasPair, k: usize) -> Vec<BigInt> {
    let p = BigInt::from(pair.p);
    let q = BigInt::from(pair.q);
    let mut u = Vec::with_capacity(k + 1);
    u.push(BigInt::zero());
    if k >= 1 {
        u.push(BigInt::one());
    }
    for i in 2..=k {
        let next = &p * &u[i - 1] - &q * &u[i - 2];
        u.push(next);
    }
    u
}

pub fn lucas_u(pair: &LucasPair, k: usize) -> BigInt {
    lucas_sequence(pair, k).pop().unwrap()
}

/// Outcome of a primitive-divisor search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimitiveDivisor {
    /// The least primitive prime divisor.
    Prime(BigUint),
    /// `u_k` has no primitive divisor.
    None,
    /// A primitive divisor exists (the primitive part exceeds 1) but its least
    /// prime factor is above the trial-division limit and the cofactor is
    /// composite.
    Undetermined { primitive_part: BigUint },
}

impl PrimitiveDivisor {
    pub fn exists(&self) -> bool {
        !matches!(self, PrimitiveDivisor::None)
    }
}

/// Part of `|u_k|` coprime to `E * u_1 * ... * u_{k-1}`.
///
/// Every prime factor of the result is a primitive divisor and every
/// primitive divisor divides it.
pub fn primitive_part(pair: &LucasPair, k: usize) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::invalid("primitive divisors are defined for k >= 2"));
    }
    let u = lucas_sequence(pair, k);
    let uk = u[k].abs().to_biguint().unwrap();
    if uk.is_zero() {
        return Err(Error::Degenerate(format!("u_{k} = 0 for ({}, {})", pair.p, pair.q)));
    }
    let e = BigInt::from(pair.discriminant()).abs().to_biguint().unwrap();
    let mut r = uk;
    let strip = |r: &mut BigUint, f: &BigUint| loop {
        let g = r.gcd(f);
        if g.is_one() || g.is_zero() {
            break;
        }
        *r /= &g;
    };
    strip(&mut r, &e);
    for v in &u[1..k] {
        if r.is_one() {
            break;
        }
        strip(&mut r, &v.abs().to_biguint().unwrap());
    }
    Ok(r)
}

pub fn primitive_divisor(pair: &LucasPair, k: usize) -> Result<PrimitiveDivisor> {
    let r = primitive_part(pair, k)?;
    if r.is_one() {
        return Ok(PrimitiveDivisor::None);
    }
    if let Some(p) = smallest_factor_below(&r, TRIAL_LIMIT) {
        return Ok(PrimitiveDivisor::Prime(BigUint::from(p)));
    }
    // no factor below the limit: small cofactors are prime outright
    let limit_sq = BigUint::from(TRIAL_LIMIT) * BigUint::from(TRIAL_LIMIT);
    if r < limit_sq || is_probable_prime(&r) {
        return Ok(PrimitiveDivisor::Prime(r));
    }
    Ok(PrimitiveDivisor::Undetermined { primitive_part: r })
}

pub fn is_defective(pair: &LucasPair, k: usize) -> Result<bool> {
    Ok(primitive_part(pair, k)?.is_one())
}

/// `alpha = (a + sqrt(d)) / den`, `beta` its conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surd {
    pub a: i64,
    pub d: i64,
    pub den: i64,
}

impl Surd {
    /// `(alpha + beta, alpha * beta)` computed from the surd.
    pub fn to_pair(self) -> Result<LucasPair> {
        let Surd { a, d, den } = self;
        let sum_num = 2 * a;
        let prod_num = a * a - d;
        if sum_num % den != 0 || prod_num % (den * den) != 0 {
            return Err(Error::invalid(format!("{self:?} is not an algebraic integer pair")));
        }
        LucasPair::new(sum_num / den, prod_num / (den * den))
    }
}

/// Odd-index defective pairs, stored as the surds they are usually quoted in.
const DEFECTIVE_SURDS: &[(usize, Surd)] = &[
    (5, Surd { a: 1, d: 5, den: 2 }),
    (5, Surd { a: 1, d: -7, den: 2 }),
    (5, Surd { a: 1, d: -15, den: 2 }),
    (5, Surd { a: 6, d: -19, den: 1 }),
    (5, Surd { a: 1, d: -10, den: 1 }),
    (5, Surd { a: 1, d: -11, den: 2 }),
    (5, Surd { a: 6, d: -341, den: 1 }),
    (7, Surd { a: 1, d: -7, den: 2 }),
    (7, Surd { a: 1, d: -19, den: 2 }),
    (13, Surd { a: 1, d: -7, den: 2 }),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectiveEntry {
    pub index: usize,
    pub pair: LucasPair,
}

/// Every stored defective entry.
pub fn defective_table() -> Vec<DefectiveEntry> {
    DEFECTIVE_SURDS
        .iter()
        .map(|&(index, s)| DefectiveEntry { index, pair: s.to_pair().expect("table surds are valid") })
        .collect()
}

/// Defective pairs at odd index `4 < k <= 30`.
pub fn defective_table_lookup(k: usize) -> Result<Vec<LucasPair>> {
    if k.is_multiple_of(2) || k <= 4 || k > 30 {
        return Err(Error::invalid(format!("table covers odd 4 < k <= 30, got {k}")));
    }
    Ok(defective_table().into_iter().filter(|e| e.index == k).map(|e| e.pair).collect())
}

/// Whether `(pair, k)` is a table entry up to `(P, Q) ~ (-P, Q)`.
pub fn in_defective_table(pair: &LucasPair, k: usize) -> bool {
    let c = pair.canonical();
    defective_table().iter().any(|e| e.index == k && e.pair.canonical() == c)
}

impl std::fmt::Display for LucasPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(P={}, Q={})", self.p, self.q)
    }
}

/// `u_k` as `i128` when it fits; convenience for tests and reports.
pub fn lucas_u_i128(pair: &LucasPair, k: usize) -> Option<i128> {
    lucas_u(pair, k).to_i128()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(p: i64, q: i64) -> LucasPair {
        LucasPair::new(p, q).unwrap()
    }

    #[test]
    fn pair_validation() {
        assert!(LucasPair::new(0, 1).is_err());
        assert!(LucasPair::new(2, 4).is_err()); // gcd
        assert!(LucasPair::new(1, 1).is_err()); // P^2 = Q
        assert!(LucasPair::new(2, 1).is_err()); // P^2 = 4Q, E = 0
        assert!(LucasPair::new(3, 3).is_err()); // P^2 = 3Q
        assert!(LucasPair::new(4, 8).is_err()); // gcd and P^2 = 2Q
        assert!(LucasPair::new(1, -1).is_ok());
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(lucas_u(&pair(1, -1), 5), BigInt::from(5));
        assert_eq!(lucas_u(&pair(1, -1), 0), BigInt::zero());
        let u: Vec<i128> = lucas_sequence(&pair(1, 2), 7).iter().map(|v| v.to_i128().unwrap()).collect();
        assert_eq!(u, vec![0, 1, 1, -1, -3, -1, 5, 7]);
    }

    #[test]
    fn primitive_divisor_examples() {
        assert_eq!(
            primitive_divisor(&pair(1, -1), 7).unwrap(),
            PrimitiveDivisor::Prime(BigUint::from(13u32))
        );
        assert_eq!(primitive_divisor(&pair(1, -1), 5).unwrap(), PrimitiveDivisor::None);
        assert_eq!(primitive_divisor(&pair(1, 2), 13).unwrap(), PrimitiveDivisor::None);
        assert!(primitive_divisor(&pair(1, 2), 1).is_err());
    }

    #[test]
    fn defective_examples() {
        assert!(is_defective(&pair(1, 2), 7).unwrap());
        assert!(is_defective(&pair(1, -1), 12).unwrap());
        assert!(!is_defective(&pair(1, 3), 31).unwrap());
    }

    #[test]
    fn table_matches_quoted_parameters() {
        let want5 = [(1, -1), (1, 2), (1, 4), (12, 55), (2, 11), (1, 3), (12, 377)];
        let got5: Vec<(i64, i64)> =
            defective_table_lookup(5).unwrap().iter().map(|p| (p.p(), p.q())).collect();
        assert_eq!(got5, want5);
        let got7: Vec<(i64, i64)> =
            defective_table_lookup(7).unwrap().iter().map(|p| (p.p(), p.q())).collect();
        assert_eq!(got7, vec![(1, 2), (1, 5)]);
        let got13: Vec<(i64, i64)> =
            defective_table_lookup(13).unwrap().iter().map(|p| (p.p(), p.q())).collect();
        assert_eq!(got13, vec![(1, 2)]);
        assert!(defective_table_lookup(9).unwrap().is_empty());
        assert!(defective_table_lookup(6).is_err());
        assert!(defective_table_lookup(3).is_err());
        assert!(defective_table_lookup(31).is_err());
    }

    #[test]
    fn surd_conversion_checks_integrality() {
        assert!(Surd { a: 1, d: -6, den: 2 }.to_pair().is_err());
        assert_eq!(Surd { a: 6, d: -19, den: 1 }.to_pair().unwrap(), pair(12, 55));
    }

    #[test]
    fn sign_equivalent_pairs_are_defective_together() {
        for e in defective_table() {
            let neg = LucasPair::new(-e.pair.p(), e.pair.q()).unwrap();
            assert!(is_defective(&neg, e.index).unwrap());
            assert!(in_defective_table(&neg, e.index));
        }
    }

    #[test]
    fn divisibility_sequence() {
        for (p, q) in [(1, -1), (1, 2), (3, -5), (-4, 7), (5, 3), (12, 55)] {
            let pr = pair(p, q);
            let u = lucas_sequence(&pr, 60);
            for k in 1..=60 {
                for m in (1..=k).filter(|m| k % m == 0) {
                    assert!((&u[k] % &u[m]).is_zero(), "u_{m} | u_{k} for {pr}");
                }
            }
        }
    }

    #[test]
    fn undetermined_is_never_reported_as_defective() {
        // F_{149}'s primitive part is large; whatever the outcome it must exist
        let pd = primitive_divisor(&pair(1, -1), 149).unwrap();
        assert!(pd.exists());
    }
}
