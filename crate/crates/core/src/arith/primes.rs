//! Primality and small factorization.
//!
//! Deterministic Miller-Rabin below 2^64, a strong probable-prime test above.
//! Factoring is trial division only; callers keep inputs small enough.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{mul_mod_u64, pow_mod_u64};

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Primes `<= limit` by the sieve of Eratosthenes.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Deterministic primality for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Strong probable-prime test to the first twelve prime bases; exact for
/// inputs below 2^64.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `n` by trial division.
///
/// Cost is `O(sqrt(p2))` where `p2` is the second largest prime factor, so
/// this is meant for `n` up to about 10^12.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for p in [2u64, 3, 5] {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    // wheel mod 30
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
            if is_prime_u64(n) {
                break;
            }
        }
        p += STEPS[i];
        i = (i + 1) % 8;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Carmichael function `lambda(m)`.
pub fn carmichael(m: u64) -> u64 {
    let mut l = 1u64;
    for (p, e) in factor_u64(m) {
        let pk = p.pow(e - 1) * (p - 1);
        let part = if p == 2 && e >= 3 { pk / 2 } else { pk };
        l = l.lcm(&part);
    }
    l
}

/// Least prime factor of `n` that is `<= limit`, if any.
pub fn smallest_factor_below(n: &BigUint, limit: u64) -> Option<u64> {
    if n.is_zero() {
        return Some(2);
    }
    if let Some(v) = n.to_u64() {
        let mut p = 2u64;
        while p <= limit && p.saturating_mul(p) <= v {
            if v % p == 0 {
                return Some(p);
            }
            p += if p == 2 { 1 } else { 2 };
        }
        return if v > 1 && v <= limit { Some(v) } else { None };
    }
    let mut p = 2u64;
    while p <= limit {
        if (n % p).is_zero() {
            return Some(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_test_matches_sieve() {
        let sieve = small_primes(100_000);
        let mut it = sieve.iter().peekable();
        for n in 0..=100_000u64 {
            let want = it.peek().map(|&&p| p == n).unwrap_or(false);
            if want {
                it.next();
            }
            assert_eq!(is_prime_u64(n), want, "{n}");
        }
    }

    #[test]
    fn known_large_primes_and_pseudoprimes() {
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_probable_prime(&m127));
        assert!(!is_probable_prime(&(&m127 * &m127)));
    }

    #[test]
    fn factorization_roundtrip() {
        for n in 1u64..5000 {
            let f = factor_u64(n);
            let prod: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
            assert!(f.iter().all(|&(p, _)| is_prime_u64(p)));
        }
        assert_eq!(factor_u64(999_999_000_001), vec![(999_999_000_001, 1)]);
        assert_eq!(factor_u64(1_000_000_007 * 13), vec![(13, 1), (1_000_000_007, 1)]);
    }

    #[test]
    fn carmichael_small_values() {
        let want = [(1, 1), (2, 1), (8, 2), (9, 6), (15, 4), (16, 4), (561, 80), (100_000, 5000)];
        for (m, l) in want {
            assert_eq!(carmichael(m), l, "lambda({m})");
        }
    }

    #[test]
    fn smallest_factor() {
        assert_eq!(smallest_factor_below(&BigUint::from(91u32), 100), Some(7));
        assert_eq!(smallest_factor_below(&BigUint::from(97u32), 100), Some(97));
        assert_eq!(smallest_factor_below(&BigUint::from(97u32), 50), None);
        let big = BigUint::from(1_000_003u64) * BigUint::from(u64::MAX);
        assert_eq!(smallest_factor_below(&big, 1_000), Some(3));
    }
}
