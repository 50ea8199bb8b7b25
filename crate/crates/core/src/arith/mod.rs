//! Exact integer primitives shared by every other module.
//!
//! Arbitrary-precision values use [`num_bigint::BigUint`] (naturals) and
//! [`num_bigint::BigInt`]. Hot loops in the searches use the `u64` variants.

pub mod primes;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use primes::{
    carmichael, factor_u64, is_prime_u64, is_probable_prime, small_primes, smallest_factor_below,
};

/// Value of a Jacobi symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum JacobiValue {
    MinusOne,
    Zero,
    PlusOne,
}

impl JacobiValue {
    pub fn as_i8(self) -> i8 {
        match self {
            JacobiValue::MinusOne => -1,
            JacobiValue::Zero => 0,
            JacobiValue::PlusOne => 1,
        }
    }

    fn from_sign(t: i8) -> Self {
        if t > 0 {
            JacobiValue::PlusOne
        } else {
            JacobiValue::MinusOne
        }
    }
}

/// Jacobi symbol `(a/m)` by the binary reciprocity iteration.
pub fn jacobi(a: &BigInt, m: &BigUint) -> Result<JacobiValue> {
    if m.is_zero() || m.is_even() {
        return Err(Error::invalid(format!("jacobi modulus must be odd and positive, got {m}")));
    }
    let mm = BigInt::from_biguint(Sign::Plus, m.clone());
    let mut a = a.mod_floor(&mm).to_biguint().expect("non-negative residue");
    let mut n = m.clone();
    let mut t: i8 = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let n8 = (&n % 8u32).to_u32().unwrap();
        if tz % 2 == 1 && (n8 == 3 || n8 == 5) {
            t = -t;
        }
        if (&a % 4u32).to_u32() == Some(3) && n8 % 4 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= &n;
    }
    Ok(if n.is_one() { JacobiValue::from_sign(t) } else { JacobiValue::Zero })
}

/// `u64` fast path of [`jacobi`].
pub fn jacobi_i64(a: i64, m: u64) -> Result<JacobiValue> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(Error::invalid(format!("jacobi modulus must be odd and positive, got {m}")));
    }
    let mut a = (a as i128).rem_euclid(m as i128) as u64;
    let mut n = m;
    let mut t: i8 = 1;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            t = -t;
        }
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    Ok(if n == 1 { JacobiValue::from_sign(t) } else { JacobiValue::Zero })
}

/// `base^exp mod modulus`.
pub fn mod_pow(base: &BigUint, exp: &BigUint, modulus: &BigUint) -> Result<BigUint> {
    if modulus.is_zero() {
        return Err(Error::invalid("mod_pow modulus must be at least 1"));
    }
    Ok(base.modpow(exp, modulus))
}

/// `base^exp mod m` on machine words. `m` must be non-zero.
#[inline]
pub fn pow_mod_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    debug_assert!(m != 0);
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

#[inline]
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Floor of the `k`-th root of `x`, and whether it is exact.
///
/// Newton iteration from an upper starting point; the sequence decreases
/// monotonically until it reaches the floor root.
pub fn integer_nth_root(x: &BigUint, k: u32) -> Result<(BigUint, bool)> {
    if k == 0 {
        return Err(Error::invalid("root index must be at least 1"));
    }
    if k == 1 || x.is_zero() || x.is_one() {
        return Ok((x.clone(), true));
    }
    let bits = x.bits();
    if bits <= u64::from(k) {
        // 1 <= root < 2
        return Ok((BigUint::one(), x.is_one()));
    }
    let k_big = BigUint::from(k);
    let km1 = k - 1;
    let mut r = BigUint::one() << bits.div_ceil(u64::from(k));
    loop {
        let next = (&r * (k - 1) + x / r.pow(km1)) / &k_big;
        if next >= r {
            break;
        }
        r = next;
    }
    let exact = r.pow(k) == *x;
    Ok((r, exact))
}

/// `log2(x)` as `f64`, accurate to about 1e-15 relative.
pub(crate) fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64).log2();
    }
    let top = (x >> (bits - 64)).to_u64().unwrap() as f64;
    top.log2() + (bits - 64) as f64
}

/// The exponent `e >= 1` with `base^e = x`, if one exists.
///
/// A floating-point estimate of `log x / log base` picks the only possible
/// candidate, which is then confirmed exactly. When the estimate is not
/// trustworthy the exponent is found by repeated exact division instead.
pub fn power_exponent_of(x: &BigUint, base: &BigUint) -> Result<Option<u64>> {
    if x.is_zero() {
        return Err(Error::invalid("power_exponent_of requires x >= 1"));
    }
    if base < &BigUint::from(2u32) {
        return Err(Error::invalid("power_exponent_of requires base >= 2"));
    }
    if x.is_one() {
        return Ok(None);
    }
    if x < base {
        return Ok(None);
    }
    let lx = log2_big(x);
    let lb = log2_big(base);
    let est = lx / lb;
    // Absolute error of the estimate, generously bounded.
    let err = (lx.abs() + 64.0) * 4.0 * f64::EPSILON / lb + 1e-12;
    if err < 1e-3 {
        let e = est.round();
        if (est - e).abs() > err + 1e-9 {
            return Ok(None);
        }
        let e = e as u64;
        if e == 0 {
            return Ok(None);
        }
        return Ok(if base.pow(e as u32) == *x { Some(e) } else { None });
    }
    Ok(exponent_by_division(x, base))
}

fn exponent_by_division(x: &BigUint, base: &BigUint) -> Option<u64> {
    let mut v = x.clone();
    let mut e = 0u64;
    while !v.is_one() {
        let (q, r) = v.div_rem(base);
        if !r.is_zero() {
            return None;
        }
        v = q;
        e += 1;
    }
    if e == 0 {
        None
    } else {
        Some(e)
    }
}

/// Least `e >= 1` with `a^e = 1 (mod m)`.
pub fn multiplicative_order(a: &BigUint, m: &BigUint) -> Result<u64> {
    let m64 = m
        .to_u64()
        .ok_or_else(|| Error::TooLarge(format!("modulus {m} exceeds 64 bits")))?;
    let a64 = (a % m).to_u64().unwrap_or(0);
    multiplicative_order_u64(a64, m64)
}

/// Machine-word variant of [`multiplicative_order`].
pub fn multiplicative_order_u64(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::invalid("multiplicative order needs m >= 2"));
    }
    if a.gcd(&m) != 1 {
        return Err(Error::invalid(format!("gcd({a}, {m}) > 1, order undefined")));
    }
    let lambda = carmichael(m);
    let mut order = lambda;
    for (q, _) in factor_u64(lambda) {
        while order.is_multiple_of(q) && pow_mod_u64(a, order / q, m) == 1 {
            order /= q;
        }
    }
    Ok(order)
}
