//! Interval arithmetic over dyadic rationals with directed rounding.
//!
//! Every [`Interval`] is a closed enclosure `[lo, hi]` of the exact real it
//! stands for. Endpoints are dyadic rationals `m * 2^e`; after each operation
//! the lower endpoint is rounded toward `-inf` and the upper toward `+inf` to
//! the interval's precision (significant bits). Comparisons that cannot be
//! decided because the enclosures overlap return a precision error instead of
//! a guess.
//!
//! Transcendental functions (`ln`, `pi`) are evaluated as fixed-point series
//! with an explicit ulp budget for truncation and rounding, then widened by
//! that budget before being rounded outward.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rounding direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Down,
    Up,
}

/// Binary digits needed to carry `digits` significant decimal digits, plus
/// guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    // log2(10) < 3.3220
    (digits as u64 * 33220).div_ceil(10000) as u32 + 16
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

fn div_dir(num: &BigInt, den: &BigInt, dir: Dir) -> BigInt {
    match dir {
        Dir::Down => num.div_floor(den),
        Dir::Up => -((-num).div_floor(den)),
    }
}

fn shr_dir(v: &BigInt, k: u64, dir: Dir) -> BigInt {
    if k == 0 {
        return v.clone();
    }
    div_dir(v, &pow2(k), dir)
}

/// Exact dyadic rational `mant * 2^exp`.
#[derive(Debug, Clone)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Dyadic { mant: v.into(), exp: 0 }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// `floor(log2 |x|)`; meaningless for zero.
    fn magnitude(&self) -> i64 {
        self.mant.bits() as i64 - 1 + self.exp
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Dir) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        Dyadic { mant: shr_dir(&self.mant, shift, dir), exp: self.exp + shift as i64 }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        Dyadic { mant: a + b, exp: e }
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic { mant: &self.mant * &o.mant, exp: self.exp + o.exp }
    }

    /// `a / b` rounded to `prec` bits in direction `dir`.
    pub fn div(a: &Dyadic, b: &Dyadic, prec: u32, dir: Dir) -> Dyadic {
        assert!(!b.is_zero(), "dyadic division by zero");
        if a.is_zero() {
            return Dyadic::zero();
        }
        let s = (prec as i64 + 2 + b.mant.bits() as i64 - a.mant.bits() as i64).max(0) as u64;
        let num = &a.mant << s;
        let q = div_dir(&num, &b.mant, dir);
        Dyadic { mant: q, exp: a.exp - s as i64 - b.exp }.round(prec, dir)
    }

    /// `sqrt(x)` for `x >= 0`, rounded in direction `dir`.
    pub fn sqrt(&self, prec: u32, dir: Dir) -> Dyadic {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = 2 * prec as i64 + 4;
        let mut s = (want - self.mant.bits() as i64).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let m = &self.mant << s as u64;
        let r = m.sqrt();
        let r = if dir == Dir::Up && &r * &r != m { r + 1 } else { r };
        Dyadic { mant: r, exp: (self.exp - s) / 2 }.round(prec, dir)
    }

    /// `floor(x * 2^w)` or `ceil(x * 2^w)`.
    pub fn to_fixed(&self, w: u32, dir: Dir) -> BigInt {
        let e = self.exp + w as i64;
        if e >= 0 {
            &self.mant << e as u64
        } else {
            shr_dir(&self.mant, (-e) as u64, dir)
        }
    }

    pub fn floor(&self) -> BigInt {
        self.to_fixed(0, Dir::Down)
    }

    pub fn ceil(&self) -> BigInt {
        self.to_fixed(0, Dir::Up)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 64 {
            (shr_dir(&self.mant, bits - 64, Dir::Down), self.exp + (bits - 64) as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        m.to_f64().unwrap() * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    /// Decimal rounding of `self` to `sig` significant digits in direction `dir`.
    pub fn to_decimal(&self, sig: u32, dir: Dir) -> Decimal {
        if self.is_zero() {
            return Decimal { mant: BigInt::zero(), exp10: 0 };
        }
        let sig = sig.max(1);
        let mut e10 = (self.magnitude() as f64 * std::f64::consts::LOG10_2).floor() as i64;
        for _ in 0..4 {
            let k = sig as i64 - 1 - e10;
            let v = self.scaled_by_pow10(k, dir);
            let len = v.abs().to_string().len() as i64;
            if len > sig as i64 {
                e10 += 1;
            } else if len < sig as i64 {
                e10 -= 1;
            } else {
                return Decimal { mant: v, exp10: -k as i32 };
            }
        }
        // Carry pushed the digit count over; accept one extra digit.
        let k = sig as i64 - 1 - e10;
        Decimal { mant: self.scaled_by_pow10(k, dir), exp10: -k as i32 }
    }

    /// `round_dir(self * 10^k)` as an integer.
    fn scaled_by_pow10(&self, k: i64, dir: Dir) -> BigInt {
        let ten = BigInt::from(10);
        let (mut num, mut den) = (self.mant.clone(), BigInt::one());
        if k >= 0 {
            num *= num_traits::pow(ten, k as usize);
        } else {
            den *= num_traits::pow(ten, (-k) as usize);
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        div_dir(&num, &den, dir)
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        a.cmp(&b)
    }
}

/// Exact decimal `mant * 10^exp10`, used for constants and reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal {
    mant: BigInt,
    exp10: i32,
}

impl Decimal {
    pub fn new(mant: impl Into<BigInt>, exp10: i32) -> Self {
        Decimal { mant: mant.into(), exp10 }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp10(&self) -> i32 {
        self.exp10
    }

    /// Tightest enclosure at `prec` bits (exact when representable).
    pub fn to_interval(&self, prec: u32) -> Interval {
        if self.exp10 >= 0 {
            let v = &self.mant * num_traits::pow(BigInt::from(10), self.exp10 as usize);
            Interval::from_int(v, prec)
        } else {
            let den = num_traits::pow(BigInt::from(10), (-self.exp10) as usize);
            Interval::from_ratio(&self.mant, &den, prec)
        }
    }

    /// Exact comparison against an integer.
    pub fn cmp_int(&self, v: &BigInt) -> Ordering {
        if self.exp10 >= 0 {
            (&self.mant * num_traits::pow(BigInt::from(10), self.exp10 as usize)).cmp(v)
        } else {
            let scale = num_traits::pow(BigInt::from(10), (-self.exp10) as usize);
            self.mant.cmp(&(v * scale))
        }
    }

    /// One unit added in the last retained digit.
    pub fn bump_up(&self) -> Decimal {
        Decimal { mant: &self.mant + 1, exp10: self.exp10 }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.mant.is_negative();
        let digits = self.mant.abs().to_string();
        let sign = if neg { "-" } else { "" };
        let len = digits.len() as i64;
        let point = len + self.exp10 as i64; // digits before the decimal point
        if self.mant.is_zero() {
            return write!(f, "0");
        }
        if point < -5 || self.exp10 > 30 {
            let (head, tail) = digits.split_at(1);
            let tail = tail.trim_end_matches('0');
            let e = point - 1;
            if tail.is_empty() {
                write!(f, "{sign}{head}e{e}")
            } else {
                write!(f, "{sign}{head}.{tail}e{e}")
            }
        } else if self.exp10 >= 0 {
            write!(f, "{sign}{digits}{}", "0".repeat(self.exp10 as usize))
        } else if point <= 0 {
            write!(f, "{sign}0.{}{digits}", "0".repeat((-point) as usize))
        } else {
            let (a, b) = digits.split_at(point as usize);
            write!(f, "{sign}{a}.{b}")
        }
    }
}

impl FromStr for Decimal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("malformed decimal {s:?}"));
        let s = s.trim();
        let (body, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (neg, body) = match body.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, body.strip_prefix('+').unwrap_or(body)),
        };
        let (int, frac) = match body.split_once('.') {
            Some((a, b)) => (a, b),
            None => (body, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let mut mant: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        if neg {
            mant = -mant;
        }
        Ok(Decimal { mant, exp10: exp - frac.len() as i32 })
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    fn make(lo: Dyadic, hi: Dyadic, prec: u32) -> Interval {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo: lo.round(prec, Dir::Down), hi: hi.round(prec, Dir::Up), prec }
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Interval {
        let d = Dyadic::from_int(v);
        Interval::make(d.clone(), d, prec)
    }

    pub fn from_dyadic(d: Dyadic, prec: u32) -> Interval {
        Interval::make(d.clone(), d, prec)
    }

    pub fn from_endpoints(lo: Dyadic, hi: Dyadic, prec: u32) -> Interval {
        assert!(lo <= hi, "inverted interval");
        Interval::make(lo, hi, prec)
    }

    /// Enclosure of `p / q`.
    pub fn from_ratio(p: &BigInt, q: &BigInt, prec: u32) -> Interval {
        assert!(!q.is_zero(), "zero denominator");
        let (a, b) = (Dyadic::from_int(p.clone()), Dyadic::from_int(q.clone()));
        Interval {
            lo: Dyadic::div(&a, &b, prec, Dir::Down),
            hi: Dyadic::div(&a, &b, prec, Dir::Up),
            prec,
        }
    }

    /// Enclosure of a decimal literal such as `"25.2"` or `"0.36e-135"`.
    pub fn from_decimal(s: &str, prec: u32) -> Result<Interval> {
        Ok(s.parse::<Decimal>()?.to_interval(prec))
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Interval {
        Interval::make(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    fn join_prec(&self, o: &Interval) -> u32 {
        self.prec.max(o.prec)
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            let hi = self.lo.abs().max(self.hi.abs());
            Interval::make(Dyadic::zero(), hi, self.prec)
        }
    }

    pub fn square(&self) -> Interval {
        let a = self.abs();
        Interval::make(a.lo.mul(&a.lo), a.hi.mul(&a.hi), self.prec)
    }

    pub fn max(&self, o: &Interval) -> Interval {
        let p = self.join_prec(o);
        Interval::make(self.lo.clone().max(o.lo.clone()), self.hi.clone().max(o.hi.clone()), p)
    }

    pub fn min(&self, o: &Interval) -> Interval {
        let p = self.join_prec(o);
        Interval::make(self.lo.clone().min(o.lo.clone()), self.hi.clone().min(o.hi.clone()), p)
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Interval {
        self * &Interval::from_int(k, self.prec)
    }

    pub fn div(&self, o: &Interval) -> Result<Interval> {
        if o.contains_zero() {
            return Err(Error::Precision("division by an interval containing zero".into()));
        }
        let p = self.join_prec(o);
        let cands = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let lo = cands.iter().map(|(a, b)| Dyadic::div(a, b, p, Dir::Down)).min().unwrap();
        let hi = cands.iter().map(|(a, b)| Dyadic::div(a, b, p, Dir::Up)).max().unwrap();
        Ok(Interval { lo, hi, prec: p })
    }

    pub fn recip(&self) -> Result<Interval> {
        Interval::from_int(1, self.prec).div(self)
    }

    pub fn sqrt(&self) -> Result<Interval> {
        if self.lo.is_negative() {
            return Err(Error::Precision("sqrt of an interval reaching below zero".into()));
        }
        Ok(Interval {
            lo: self.lo.sqrt(self.prec, Dir::Down),
            hi: self.hi.sqrt(self.prec, Dir::Up),
            prec: self.prec,
        })
    }

    /// Natural logarithm; the interval must lie strictly above zero.
    pub fn ln(&self) -> Result<Interval> {
        if !self.lo.is_positive() {
            return Err(Error::Precision("ln of an interval not strictly positive".into()));
        }
        let w = self.prec + 64;
        let (c_lo, r_lo) = ln_fixed(&self.lo, w);
        let (c_hi, r_hi) = if self.lo == self.hi { (c_lo.clone(), r_lo) } else { ln_fixed(&self.hi, w) };
        let lo = Dyadic::new(c_lo - BigInt::from(r_lo), -(w as i64));
        let hi = Dyadic::new(c_hi + BigInt::from(r_hi), -(w as i64));
        Ok(Interval::make(lo, hi, self.prec))
    }

    pub fn pi(prec: u32) -> Interval {
        let w = prec + 64;
        let (a, ra) = atan_inv_fixed(5, w);
        let (b, rb) = atan_inv_fixed(239, w);
        let c = a * 16 - b * 4;
        let r = BigInt::from(16 * ra + 4 * rb);
        Interval::make(Dyadic::new(&c - &r, -(w as i64)), Dyadic::new(&c + &r, -(w as i64)), prec)
    }

    pub fn ln2(prec: u32) -> Interval {
        let w = prec + 64;
        let (c, r) = ln2_fixed(w);
        let r = BigInt::from(r);
        Interval::make(Dyadic::new(&c - &r, -(w as i64)), Dyadic::new(&c + &r, -(w as i64)), prec)
    }

    /// Certified `self < o`; overlapping enclosures are a precision error.
    pub fn decide_lt(&self, o: &Interval, what: &str) -> Result<bool> {
        if self.hi < o.lo {
            Ok(true)
        } else if self.lo >= o.hi {
            Ok(false)
        } else {
            Err(Error::Precision(format!(
                "cannot decide {what}: enclosures overlap ([{}, {}] vs [{}, {}])",
                self.lo.to_f64(),
                self.hi.to_f64(),
                o.lo.to_f64(),
                o.hi.to_f64()
            )))
        }
    }

    /// `Some(true)` when certainly `self < o`, `Some(false)` when certainly
    /// `self >= o`, `None` when undecided.
    pub fn try_lt(&self, o: &Interval) -> Option<bool> {
        self.decide_lt(o, "").ok()
    }

    pub fn to_decimal_up(&self, sig: u32) -> Decimal {
        self.hi.to_decimal(sig, Dir::Up)
    }

    pub fn to_decimal_down(&self, sig: u32) -> Decimal {
        self.lo.to_decimal(sig, Dir::Down)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.to_decimal_down(20), self.to_decimal_up(20))
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval::make(self.lo.add(&o.lo), self.hi.add(&o.hi), self.join_prec(o))
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval::make(self.lo.sub(&o.hi), self.hi.sub(&o.lo), self.join_prec(o))
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [self.lo.mul(&o.lo), self.lo.mul(&o.hi), self.hi.mul(&o.lo), self.hi.mul(&o.hi)];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::make(lo, hi, self.join_prec(o))
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Interval {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval {
                (&self).$m(&o)
            }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, o: &Interval) -> Interval {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

// ---- fixed-point series -------------------------------------------------

/// `atanh(s)` at `w` fractional bits, where `s_fx` approximates `s * 2^w`
/// within `s_err` ulps and `0 <= s <= 1/3`. Returns (center, radius in ulps).
fn atanh_fixed(s_fx: &BigInt, s_err: u64, w: u32) -> (BigInt, u64) {
    let s2 = (s_fx * s_fx) >> w;
    let mut pow = s_fx.clone();
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        let term = &pow / (2 * j + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        pow = (&pow * &s2) >> w;
        j += 1;
    }
    // Each power carries at most s_err + 3 ulps of error, each quotient one
    // more; the tail after the first vanishing term is below 2 ulps.
    (sum, (j + 1) * (s_err + 5) + 4)
}

fn ln2_fixed(w: u32) -> (BigInt, u64) {
    static CACHE: OnceLock<Mutex<Vec<(u32, BigInt, u64)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    if let Some((_, c, r)) = cache.lock().unwrap().iter().find(|(k, _, _)| *k == w) {
        return (c.clone(), *r);
    }
    // ln 2 = 2 atanh(1/3)
    let s = pow2(w as u64) / 3;
    let (c, r) = atanh_fixed(&s, 1, w);
    let out: (BigInt, u64) = (c * 2, 2 * r);
    let mut guard = cache.lock().unwrap();
    if guard.len() > 64 {
        guard.clear();
    }
    guard.push((w, out.0.clone(), out.1));
    out
}

/// `ln(d)` for positive dyadic `d` at `w` fractional bits.
fn ln_fixed(d: &Dyadic, w: u32) -> (BigInt, u64) {
    debug_assert!(d.is_positive());
    let l = d.mant.bits() as i64;
    let k = d.exp + l - 1; // d = f * 2^k, f in [1, 2)
    let shift = w as i64 - (l - 1);
    let (f, f_err) = if shift >= 0 {
        (&d.mant << shift as u64, 0u64)
    } else {
        (shr_dir(&d.mant, (-shift) as u64, Dir::Down), 1)
    };
    let one = pow2(w as u64);
    // s = (f - 1) / (f + 1) in [0, 1/3)
    let s = ((&f - &one) << w).div_floor(&(&f + &one));
    let s_err = f_err + 1;
    let (a, ra) = atanh_fixed(&s, s_err, w);
    let (l2, rl2) = ln2_fixed(w);
    let center = a * 2 + &l2 * k;
    let radius = 2 * ra + rl2 * k.unsigned_abs() + 1;
    (center, radius)
}

/// `atan(1/m)` at `w` fractional bits. Returns (center, radius in ulps).
fn atan_inv_fixed(m: u64, w: u32) -> (BigInt, u64) {
    let m2 = BigInt::from(m * m);
    let mut pow = pow2(w as u64) / m;
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        let term = &pow / (2 * j + 1);
        if term.is_zero() {
            break;
        }
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        pow = &pow / &m2;
        j += 1;
    }
    (sum, 3 * (j + 1) + 4)
}
