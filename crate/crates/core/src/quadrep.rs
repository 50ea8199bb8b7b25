//! Representations `D1 X^2 + D2 Y^2 = k^Z` with coprime `X, Y`, grouped into
//! the classes generated by powers of a minimal solution.

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{factor_u64, power_exponent_of};
use crate::classnum::class_number;
use crate::error::{Error, Result};

/// Largest `n^z0` the descent check will scan.
pub const DESCENT_CEILING: u128 = 1_000_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationInstance {
    pub d1: u64,
    pub d2: u64,
    pub k: u64,
    pub z_max: u32,
}

impl RepresentationInstance {
    pub fn new(d1: u64, d2: u64, k: u64, z_max: u32) -> Result<Self> {
        if d1 == 0 || d2 == 0 || z_max == 0 {
            return Err(Error::invalid("D1, D2 and z_max must be positive"));
        }
        if k < 2 {
            return Err(Error::invalid("k must be at least 2"));
        }
        if d1.gcd(&d2) != 1 {
            return Err(Error::invalid(format!("gcd(D1, D2) = gcd({d1}, {d2}) must be 1")));
        }
        if k.gcd(&(d1 * d2)) != 1 {
            return Err(Error::invalid(format!("k = {k} must be coprime to D1*D2 = {}", d1 * d2)));
        }
        Ok(RepresentationInstance { d1, d2, k, z_max })
    }

    fn k_pow(&self, z: u32) -> Result<u128> {
        (self.k as u128)
            .checked_pow(z)
            .filter(|v| *v < 1u128 << 100)
            .ok_or_else(|| Error::TooLarge(format!("{}^{z}", self.k)))
    }
}

pub type Triple = (u64, u64, u32);

/// All `(X, Y, Z)` with `X, Y > 0`, `gcd(X, Y) = 1`, `Z <= z_max`.
pub fn enumerate_solutions(inst: &RepresentationInstance) -> Result<Vec<Triple>> {
    enumerate_with_scale(inst, 1)
}

/// Scan with the `X` bound multiplied by `scale`; used to confirm that the
/// default bound is exhaustive.
pub fn enumerate_with_scale(inst: &RepresentationInstance, scale: u64) -> Result<Vec<Triple>> {
    let mut out = Vec::new();
    for z in 1..=inst.z_max {
        let kz = inst.k_pow(z)?;
        let xmax = (kz / inst.d1 as u128).sqrt() as u64 * scale.max(1);
        for x in 1..=xmax {
            let dx = inst.d1 as u128 * x as u128 * x as u128;
            if dx >= kz {
                continue;
            }
            let rest = kz - dx;
            if !rest.is_multiple_of(inst.d2 as u128) {
                continue;
            }
            let y2 = rest / inst.d2 as u128;
            let y = y2.sqrt();
            if y > 0 && y * y == y2 && x.gcd(&(y as u64)) == 1 {
                out.push((x, y as u64, z));
            }
        }
    }
    Ok(out)
}

/// `a + b w + c e + d w e` with `w^2 = D1`, `e^2 = -D2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Elt([i128; 4]);

impl Elt {
    fn mul(self, o: Elt, d1: i128, d2: i128) -> Elt {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        let r = Elt([
            a * e + d1 * b * f - d2 * c * g - d1 * d2 * d * h,
            a * f + b * e - d2 * (c * h + d * g),
            a * g + c * e + d1 * (b * h + d * f),
            a * h + d * e + b * g + c * f,
        ]);
        r.normalize(d1)
    }

    // with D1 = 1 the generator w is 1 itself
    fn normalize(self, d1: i128) -> Elt {
        let [a, b, c, d] = self.0;
        if d1 == 1 {
            Elt([a + b, 0, c + d, 0])
        } else {
            self
        }
    }

    fn fits(&self) -> bool {
        self.0.iter().all(|v| v.unsigned_abs() < 1u128 << 60)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionClass {
    pub minimal: Triple,
    pub members: Vec<Triple>,
    /// Exponent `t` of each member relative to the minimal solution.
    pub exponents: Vec<u32>,
}

/// Outcome of checking the class-count and minimal-exponent claims.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub classes: usize,
    pub class_limit: usize,
    pub h: u64,
    /// `Z1` for every class, paired with whether the divisibility claim holds.
    pub minimal_exponents: Vec<(u32, bool)>,
}

impl LemmaCheck {
    pub fn holds(&self) -> bool {
        self.classes <= self.class_limit && self.minimal_exponents.iter().all(|&(_, ok)| ok)
    }
}

fn omega(k: u64) -> usize {
    factor_u64(k).len()
}

fn check_classifiable(inst: &RepresentationInstance) -> Result<()> {
    let p = inst.d1 * inst.d2;
    if p == 1 || p == 3 {
        return Err(Error::invalid("D1*D2 in {1, 3} is outside the implemented branch"));
    }
    if inst.k.is_multiple_of(2) {
        return Err(Error::invalid("the unit-lambda branch needs odd k"));
    }
    Ok(())
}

/// Whether `(x, y, z)` is generated by the class with minimal solution `m`;
/// returns the exponent `t`.
fn member_exponent(inst: &RepresentationInstance, m: Triple, s: Triple) -> Result<Option<u32>> {
    if !s.2.is_multiple_of(m.2) {
        return Ok(None);
    }
    let t = s.2 / m.2;
    let (d1, d2) = (inst.d1 as i128, inst.d2 as i128);
    let mut units = vec![Elt([1, 0, 0, 0]), Elt([-1, 0, 0, 0])];
    if inst.d2 == 1 && t.is_multiple_of(2) {
        units.push(Elt([0, 0, 1, 0]));
        units.push(Elt([0, 0, -1, 0]));
    }
    for l2 in [1i128, -1] {
        let base = Elt([0, m.0 as i128, l2 * m.1 as i128, 0]).normalize(d1);
        let mut pw = Elt([1, 0, 0, 0]);
        for _ in 0..t {
            pw = pw.mul(base, d1, d2);
            if !pw.fits() {
                return Err(Error::TooLarge(format!("power {t} of {m:?}")));
            }
        }
        for u in &units {
            // sign of each coordinate is free: X, Y are reported positive
            for sx in [1i128, -1] {
                for sy in [1i128, -1] {
                    let signed = Elt([0, sx * s.0 as i128, sy * s.1 as i128, 0]).normalize(d1);
                    if u.mul(signed, d1, d2) == pw {
                        return Ok(Some(t));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Groups solutions by increasing `Z`; a solution that is not a power of an
/// existing minimal element opens a new class.
pub fn classify(inst: &RepresentationInstance, sols: &[Triple]) -> Result<Vec<SolutionClass>> {
    check_classifiable(inst)?;
    let mut sorted = sols.to_vec();
    sorted.sort_by_key(|&(x, y, z)| (z, x, y));
    let mut classes: Vec<SolutionClass> = Vec::new();
    for s in sorted {
        let lhs = inst.d1 as u128 * (s.0 as u128).pow(2) + inst.d2 as u128 * (s.1 as u128).pow(2);
        if lhs != inst.k_pow(s.2)? || s.0.gcd(&s.1) != 1 {
            return Err(Error::invalid(format!("{s:?} is not a primitive solution")));
        }
        let mut placed = false;
        for c in classes.iter_mut() {
            if let Some(t) = member_exponent(inst, c.minimal, s)? {
                c.members.push(s);
                c.exponents.push(t);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(SolutionClass { minimal: s, members: vec![s], exponents: vec![1] });
        }
    }
    Ok(classes)
}

/// Checks the class bound `2^(omega(k) - 1)` and that `Z1` (or `2 Z1` when
/// neither coefficient is 1) divides `h(-4 D1 D2)`.
pub fn check_lemma(inst: &RepresentationInstance, classes: &[SolutionClass]) -> Result<LemmaCheck> {
    check_classifiable(inst)?;
    let h = class_number(inst.d1 * inst.d2)?;
    let class_limit = 1usize << (omega(inst.k) - 1);
    let factor = if inst.d1 == 1 || inst.d2 == 1 { 1 } else { 2 };
    let minimal_exponents =
        classes.iter().map(|c| (c.minimal.2, h % (factor * c.minimal.2 as u64) == 0)).collect();
    Ok(LemmaCheck { classes: classes.len(), class_limit, h, minimal_exponents })
}

fn is_power_with_min(v: &BigUint, base: u64, min_exp: u64) -> Result<bool> {
    if v.is_one() {
        return Ok(min_exp == 0);
    }
    Ok(matches!(power_exponent_of(v, &BigUint::from(base))?, Some(e) if e >= min_exp))
}

/// Scans `(n - 1) x0^2 + y0^2 = n^z0` for a pair compatible with the square
/// (`e = 2`) or cube (`e = 3`) expansion. `true` means no pair is compatible.
///
/// For `e = 2` only `|2 x0 y0| = (n-1)^j` is imposed. For `e = 3` both
/// `|x0 (3 y0^2 - x0^2 (n-1))| = (n-1)^j` and
/// `|y0 (y0^2 - 3 x0^2 (n-1))| = (n+2)^i` with `i >= 1` are imposed.
pub fn descent_square_cube_check(n: u64, z0: u32, e: u32) -> Result<bool> {
    if n <= 2 || z0 == 0 {
        return Err(Error::invalid("need n > 2 and z0 >= 1"));
    }
    if e != 2 && e != 3 {
        return Err(Error::invalid(format!("exponent {e} is not 2 or 3")));
    }
    let nz = (n as u128)
        .checked_pow(z0)
        .filter(|v| *v <= DESCENT_CEILING)
        .ok_or_else(|| Error::TooLarge(format!("{n}^{z0} exceeds the scan ceiling")))?;
    Ok(descent_pairs(n, nz).into_iter().all(|(x0, y0)| !descent_consistent(n, x0, y0, e).unwrap_or(false)))
}

fn descent_pairs(n: u64, nz: u128) -> Vec<(u64, u64)> {
    let m = (n - 1) as u128;
    let mut out = Vec::new();
    let xmax = (nz / m).sqrt();
    for x0 in 1..=xmax {
        let rest = nz - m * x0 * x0;
        let y0 = rest.sqrt();
        if y0 > 0 && y0 * y0 == rest && (x0 as u64).gcd(&(y0 as u64)) == 1 {
            out.push((x0 as u64, y0 as u64));
        }
    }
    out
}

fn descent_consistent(n: u64, x0: u64, y0: u64, e: u32) -> Result<bool> {
    use num_bigint::BigInt;
    let m = BigInt::from(n - 1);
    let (x, y) = (BigInt::from(x0), BigInt::from(y0));
    let abs = |v: BigInt| v.magnitude().clone();
    if e == 2 {
        return is_power_with_min(&abs(BigInt::from(2) * &x * &y), n - 1, 0);
    }
    let imag = &x * (BigInt::from(3) * &y * &y - &x * &x * &m);
    let real = &y * (&y * &y - BigInt::from(3) * &x * &x * &m);
    Ok(is_power_with_min(&abs(imag), n - 1, 0)? && is_power_with_min(&abs(real), n + 2, 1)?)
}

/// `omega(k)` exposed for reports.
pub fn distinct_prime_count(k: u64) -> usize {
    omega(k)
}

/// Exact `D1 X^2 + D2 Y^2` for reporting.
pub fn evaluate(inst: &RepresentationInstance, x: u64, y: u64) -> Option<u64> {
    (inst.d1 as u128 * x as u128 * x as u128 + inst.d2 as u128 * y as u128 * y as u128).to_u64()
}
