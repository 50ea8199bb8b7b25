//! Linear forms in two logarithms: heights, the two-logarithm lower bound
//! with `m = 10`, `C2 = 25.2`, and the exponent bounds it yields for
//! `n - 1 + (n + 2)^y = n^z`.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::factor_u64;
use crate::error::{Error, Result};
use crate::real::{bits_for_digits, Interval};

/// Inputs above this are not factored for the independence test.
pub const FACTOR_LIMIT: u64 = 1_000_000_000_000;

/// `Omega = c2 log(phi2) - c1 log(phi1)` with `phi1, phi2 > 1` rational integers
/// (or of the given degree for the bound's bookkeeping).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinFormInstance {
    pub phi1: u64,
    pub phi2: u64,
    pub c1: u64,
    pub c2: u64,
    pub degree: u32,
}

impl LinFormInstance {
    pub fn new(phi1: u64, phi2: u64, c1: u64, c2: u64, degree: u32) -> Result<Self> {
        if phi1 < 2 || phi2 < 2 {
            return Err(Error::invalid("phi1 and phi2 must be at least 2"));
        }
        if c1 == 0 || c2 == 0 || degree == 0 {
            return Err(Error::invalid("c1, c2 and the degree must be positive"));
        }
        if !multiplicatively_independent(phi1, phi2)? {
            return Err(Error::Degenerate(format!("{phi1} and {phi2} are multiplicatively dependent")));
        }
        Ok(LinFormInstance { phi1, phi2, c1, c2, degree })
    }

    /// Family instance `z log n - y log(n + 2)`.
    pub fn family(n: u64, y: u64, z: u64) -> Result<Self> {
        LinFormInstance::new(n + 2, n, y, z, 1)
    }
}

/// No `p, q >= 1` with `a^p = b^q`; decided on prime exponent vectors.
pub fn multiplicatively_independent(a: u64, b: u64) -> Result<bool> {
    if a < 2 || b < 2 {
        return Err(Error::invalid("independence is tested for integers >= 2"));
    }
    if a > FACTOR_LIMIT || b > FACTOR_LIMIT {
        return Err(Error::TooLarge(format!("{a}, {b} above the factoring limit")));
    }
    let fa = factor_u64(a);
    let fb = factor_u64(b);
    if fa.len() != fb.len() || fa.iter().zip(&fb).any(|(x, y)| x.0 != y.0) {
        return Ok(true);
    }
    // same primes: dependent iff exponents are proportional
    let (e0, f0) = (fa[0].1 as u64, fb[0].1 as u64);
    Ok(fa.iter().zip(&fb).any(|(x, y)| x.1 as u64 * f0 != y.1 as u64 * e0))
}

/// Absolute logarithmic height of `p/q`: `log max(|p|, |q|)` after reduction.
pub fn log_height(p: i64, q: i64, prec: u32) -> Result<Interval> {
    if p == 0 {
        return Err(Error::invalid("height of zero is undefined"));
    }
    if q == 0 {
        return Err(Error::invalid("zero denominator"));
    }
    let g = p.gcd(&q);
    let m = (p / g).unsigned_abs().max((q / g).unsigned_abs());
    Interval::from_int(m, prec).ln()
}

/// `log B = max(h(phi), |log phi| / D, 1 / D)` for an integer `phi >= 2`.
pub fn log_b(phi: u64, degree: u32, prec: u32) -> Result<Interval> {
    let h = log_height(phi as i64, 1, prec)?;
    let d = Interval::from_int(degree, prec);
    Ok(h.max(&h.div(&d)?).max(&Interval::from_int(1, prec).div(&d)?))
}

fn check_log_b(lb: &Interval) -> Result<()> {
    if !lb.is_positive() {
        return Err(Error::invalid("log B must be positive"));
    }
    Ok(())
}

/// `d' = c1 / (D log B2) + c2 / (D log B1)`.
pub fn dprime(inst: &LinFormInstance, log_b1: &Interval, log_b2: &Interval) -> Result<Interval> {
    check_log_b(log_b1)?;
    check_log_b(log_b2)?;
    let d = inst.degree as u64;
    let t1 = Interval::from_int(inst.c1, log_b2.prec()).div(&log_b2.mul_int(d))?;
    let t2 = Interval::from_int(inst.c2, log_b1.prec()).div(&log_b1.mul_int(d))?;
    Ok(&t1 + &t2)
}

fn decimal(s: &str, prec: u32) -> Interval {
    Interval::from_decimal(s, prec).expect("literal constant")
}

/// `-25.2 D^4 max(log d' + 0.38, 10 / D)^2 log B1 log B2`; the lower endpoint
/// is the sound value.
pub fn laurent_lower_bound(inst: &LinFormInstance, log_b1: &Interval, log_b2: &Interval) -> Result<Interval> {
    if !multiplicatively_independent(inst.phi1, inst.phi2)? {
        return Err(Error::Degenerate("multiplicatively dependent inputs".into()));
    }
    let prec = log_b1.prec().max(log_b2.prec());
    let dp = dprime(inst, log_b1, log_b2)?;
    let d = inst.degree as u64;
    let m = (&dp.ln()? + &decimal("0.38", prec)).max(&Interval::from_int(10, prec).div(&Interval::from_int(d, prec))?);
    let coef = decimal("25.2", prec).mul_int(d.pow(4));
    Ok(-&(&(&coef * &m.square()) * &(log_b1 * log_b2)))
}

/// Whether the `log d' + 0.38 > 10 / D` branch is active; `None` if undecided.
pub fn laurent_large_branch(inst: &LinFormInstance, log_b1: &Interval, log_b2: &Interval) -> Result<Option<bool>> {
    let prec = log_b1.prec();
    let dp = dprime(inst, log_b1, log_b2)?;
    let lhs = &dp.ln()? + &decimal("0.38", prec);
    let rhs = Interval::from_int(10, prec).div(&Interval::from_int(inst.degree, prec))?;
    Ok(rhs.try_lt(&lhs))
}

/// Signed `c2 log phi2 - c1 log phi1`.
pub fn omega(inst: &LinFormInstance, prec: u32) -> Result<Interval> {
    let l1 = Interval::from_int(inst.phi1, prec).ln()?;
    let l2 = Interval::from_int(inst.phi2, prec).ln()?;
    Ok(&l2.mul_int(inst.c2) - &l1.mul_int(inst.c1))
}

/// `|z log n - y log(n + 2)|`.
pub fn omega_actual(n: u64, y: u64, z: u64, prec: u32) -> Result<Interval> {
    if n < 3 || y == 0 || z == 0 {
        return Err(Error::invalid("need n >= 3 and y, z >= 1"));
    }
    let ln = Interval::from_int(n, prec).ln()?;
    let ln2 = Interval::from_int(n + 2, prec).ln()?;
    Ok((&ln.mul_int(z) - &ln2.mul_int(y)).abs())
}

/// Certified `log |Omega| >= bound`, escalating precision while undecided.
pub fn laurent_holds(inst: &LinFormInstance, digits: u32) -> Result<bool> {
    let mut prec = bits_for_digits(digits);
    for _ in 0..4 {
        let om = omega(inst, prec)?.abs();
        if om.contains_zero() {
            prec *= 2;
            continue;
        }
        let lb1 = log_b(inst.phi1, inst.degree, prec)?;
        let lb2 = log_b(inst.phi2, inst.degree, prec)?;
        let bound = laurent_lower_bound(inst, &lb1, &lb2)?;
        match bound.try_lt(&om.ln()?) {
            Some(v) => return Ok(v),
            None => prec *= 2,
        }
    }
    Err(Error::Precision(format!("undecided comparison for {inst:?}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    LargeDprime,
    SmallDprime,
}

/// Bounds returned when the whole chain is consistent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundResult {
    /// Exclusive ceiling on `n`.
    pub n_max: u64,
    /// Exclusive ceiling on `y`.
    pub y_max: u64,
    pub precision_digits: u32,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub label: String,
    pub claim: String,
    pub holds: bool,
    pub detail: String,
}

/// Every inequality of the derivation with its verdict, plus the ceilings the
/// chain actually certifies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundDerivation {
    pub steps: Vec<ChainStep>,
    /// Least `N` with `N >= 70.99 + 1/log N + 2520`; every `n` in the family
    /// case satisfies `n < N` if the chain is sound.
    pub n_max: u64,
    /// `floor(1 + 2520 log(n_max - 1)) + 1`.
    pub y_max: u64,
    pub stated_n_max: u64,
    pub stated_y_max: u64,
    /// Upper enclosure of the root of `u = 0.24 + 25.2 (log(u + 0.18e-135) + 1.08)^2`.
    pub large_branch_root: String,
    /// Ceilings from `n < y < 1 + 2520 log n` instead of the `(n - 70.99) log n` bound.
    pub alt_n_max: u64,
    pub alt_y_max: u64,
    pub precision_digits: u32,
    pub branch: Branch,
}

impl BoundDerivation {
    pub fn consistent(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }

    pub fn failed_steps(&self) -> impl Iterator<Item = &ChainStep> {
        self.steps.iter().filter(|s| !s.holds)
    }

    pub fn result(&self) -> BoundResult {
        BoundResult {
            n_max: self.n_max,
            y_max: self.y_max,
            precision_digits: self.precision_digits,
            branch: self.branch,
        }
    }
}

pub const STATED_N_MAX: u64 = 2591;
pub const STATED_Y_MAX: u64 = 19808;
const N_MIN: u64 = 71;
const Y_MIN: u64 = 73;

struct Ctx {
    prec: u32,
}

impl Ctx {
    fn int(&self, v: u64) -> Interval {
        Interval::from_int(v, self.prec)
    }

    fn dec(&self, s: &str) -> Interval {
        decimal(s, self.prec)
    }

    fn ln(&self, v: u64) -> Result<Interval> {
        self.int(v).ln()
    }

    /// `70.99 + 1/log n + 2520`
    fn n_rhs(&self, n: u64) -> Result<Interval> {
        Ok(&(&self.dec("70.99") + &self.ln(n)?.recip()?) + &self.int(2520))
    }

    /// `0.24 + 25.2 (log(u + 0.18e-135) + 1.08)^2`
    fn large_rhs(&self, u: &Interval) -> Result<Interval> {
        let inner = &(u + &self.dec("0.18e-135")).ln()? + &self.dec("1.08");
        Ok(&self.dec("0.24") + &(&self.dec("25.2") * &inner.square()))
    }
}

fn step(label: &str, claim: &str, holds: bool, detail: String) -> ChainStep {
    ChainStep { label: label.into(), claim: claim.into(), holds, detail }
}

/// Runs the derivation at the given precision. Failing inequalities are
/// recorded, not raised; only undecidable comparisons are errors.
pub fn derive_family_bounds_report(digits: u32) -> Result<BoundDerivation> {
    if digits < crate::DEFAULT_PRECISION_DIGITS {
        return Err(Error::Precision(format!("{digits} digits is below the 60-digit floor")));
    }
    let c = Ctx { prec: bits_for_digits(digits) };
    let mut steps = Vec::new();

    // least N with N >= 70.99 + 1/log N + 2520 (right side decreasing)
    let mut n_max = 2500;
    while c.int(n_max).decide_lt(&c.n_rhs(n_max)?, "n ceiling")? {
        n_max += 1;
    }
    let sweep: Vec<u64> = (N_MIN..n_max).filter(|n| n % 8 == 7).collect();

    let bad: Vec<u64> = sweep.iter().copied().filter(|&n| 104 * (n - 1) >= 100 * (n + 2)).collect();
    steps.push(step(
        "omega-upper",
        "(n-1)/(n+2) < 1/1.04 for all n in range, giving 0 < Omega < 1/(1.04 (n+2)^(y-1))",
        bad.is_empty(),
        sweep_detail(&bad, sweep.len()),
    ));

    let mut bad = Vec::new();
    for &n in &sweep {
        let ln = c.ln(n)?;
        let lhs = ln.div(&(&ln.mul_int(2) - &c.ln(n + 2)?))?;
        let rhs = &(&c.int(n) - &c.dec("70.99")) * &ln;
        if !rhs.decide_lt(&lhs, "y lower bound")? {
            bad.push(n);
        }
    }
    steps.push(step(
        "y-lower",
        "log n / log(n^2/(n+2)) > (n - 70.99) log n for all n in range",
        bad.is_empty(),
        sweep_detail(&bad, sweep.len()),
    ));

    // decreasing in n and y, so the corner (71, 73) is the worst case
    let log_eps = -&(&(&(&c.dec("1.04").ln()? + &c.ln(N_MIN + 2)?.mul_int(Y_MIN - 1)) + &c.ln(N_MIN)?.ln()?)
        + &c.ln(N_MIN + 2)?.ln()?);
    let eps_ok = log_eps.decide_lt(&c.dec("0.36e-135").ln()?, "epsilon")?;
    steps.push(step(
        "epsilon",
        "1/(1.04 (n+2)^(y-1) log n log(n+2)) < 0.36e-135 at n = 71, y = 73",
        eps_ok,
        format!("log of left side in {log_eps}"),
    ));

    let inv = c.ln(N_MIN)?.recip()?;
    steps.push(step(
        "const-0.24",
        "1/log 71 < 0.24",
        inv.decide_lt(&c.dec("0.24"), "0.24")?,
        format!("1/log 71 in {inv}"),
    ));
    let l2 = &Interval::ln2(c.prec) + &c.dec("0.38");
    steps.push(step(
        "const-1.08",
        "log 2 + 0.38 < 1.08",
        l2.decide_lt(&c.dec("1.08"), "1.08")?,
        format!("log 2 + 0.38 in {l2}"),
    ));
    let l104 = c.dec("1.04").ln()?;
    steps.push(step(
        "const-0.039",
        "log 1.04 > 0.039",
        c.dec("0.039").decide_lt(&l104, "0.039")?,
        format!("log 1.04 in {l104}"),
    ));

    // u - rhs(u) is increasing for u >= 1870, so one sign check bounds the root
    let u0 = c.int(1870);
    let root_ok = c.large_rhs(&u0)?.decide_lt(&u0, "large branch")?;
    let root = large_branch_root(&c)?;
    steps.push(step(
        "large-branch-y",
        "u < 0.24 + 25.2 (log(u + 0.18e-135) + 1.08)^2 forces u < 1870, so y < 1870 log n",
        root_ok,
        format!("root below {}", root.to_decimal_up(12)),
    ));
    let dmax = &c.int(2 * 1870) + &c.dec("0.36e-135");
    let d_ok = dmax.decide_lt(&c.int(3741), "3741")?;
    let l3741 = c.ln(3741)?;
    let ld_ok = l3741.decide_lt(&c.dec("8.23"), "8.23")?;
    steps.push(step(
        "large-branch-dprime",
        "d' < 2*1870 + 0.36e-135 < 3741 and log 3741 < 8.23",
        d_ok && ld_ok,
        format!("log 3741 in {l3741}"),
    ));
    steps.push(step(
        "large-branch-contradiction",
        "8.23 + 0.38 <= 10, contradicting log d' + 0.38 > 10",
        c.dec("8.61").decide_lt(&c.int(10), "contradiction")?,
        "8.61 <= 10".into(),
    ));

    let sup = c.n_rhs(N_MIN)?;
    let fin_ok = sup.decide_lt(&c.int(STATED_N_MAX), "2591")?;
    steps.push(step(
        "n-ceiling",
        "70.99 + 1/log n + 2520 < 2591 for n >= 71",
        fin_ok,
        format!("value at n = 71 in {sup}; chain excludes n >= {n_max}"),
    ));

    let y_max = y_ceiling(&c, n_max - 1)?;
    let y_ok = y_max <= STATED_Y_MAX;
    steps.push(step(
        "y-ceiling",
        "y - 1 < 2520 log n gives y < 19808 over the n range",
        y_ok,
        format!("y < {y_max} for n <= {}", n_max - 1),
    ));

    let mut alt_n_max = 20_000;
    while c.int(alt_n_max).decide_lt(&(&c.int(1) + &c.ln(alt_n_max)?.mul_int(2520)), "alt ceiling")? {
        alt_n_max += 1;
    }
    let alt_y_max = y_ceiling(&c, alt_n_max - 1)?;

    Ok(BoundDerivation {
        steps,
        n_max,
        y_max,
        stated_n_max: STATED_N_MAX,
        stated_y_max: STATED_Y_MAX,
        large_branch_root: root.to_decimal_up(12).to_string(),
        alt_n_max,
        alt_y_max,
        precision_digits: digits,
        branch: Branch::SmallDprime,
    })
}

/// Exclusive ceiling `floor(1 + 2520 log n) + 1`.
fn y_ceiling(c: &Ctx, n: u64) -> Result<u64> {
    let v = &c.int(1) + &c.ln(n)?.mul_int(2520);
    let (lo, hi) = (v.lo().floor(), v.hi().floor());
    if lo != hi {
        return Err(Error::Precision("y ceiling straddles an integer".into()));
    }
    Ok(u64::try_from(lo).map_err(|_| Error::TooLarge("y ceiling".into()))? + 1)
}

/// Bisection enclosure of the largest root of `u = rhs(u)` in `[1000, 3000]`.
fn large_branch_root(c: &Ctx) -> Result<Interval> {
    let mut lo = c.int(1000);
    let mut hi = c.int(3000);
    for _ in 0..40 {
        let mid = (&lo + &hi).div(&c.int(2))?;
        let mid = Interval::from_dyadic(mid.hi().clone(), c.prec);
        match c.large_rhs(&mid)?.try_lt(&mid) {
            Some(true) => hi = mid,
            Some(false) => lo = mid,
            None => break,
        }
    }
    Ok(Interval::from_endpoints(lo.lo().clone(), hi.hi().clone(), c.prec))
}

fn sweep_detail(bad: &[u64], total: usize) -> String {
    match bad.first() {
        None => format!("holds at all {total} n"),
        Some(first) => format!("fails at {} of {total} n; first counterexample n = {first}", bad.len()),
    }
}

/// The certified ceilings, or a verification error listing the inequalities
/// that do not hold.
pub fn derive_family_bounds(digits: u32) -> Result<BoundResult> {
    let d = derive_family_bounds_report(digits)?;
    if !d.consistent() {
        let failed: Vec<String> = d.failed_steps().map(|s| format!("{}: {}", s.label, s.detail)).collect();
        return Err(Error::Verification(format!("bound chain inconsistent: {}", failed.join("; "))));
    }
    Ok(d.result())
}

/// Signed family form evaluated at big precision; `z log n - y log(n+2)`.
pub fn family_omega(n: u64, y: u64, z: u64, prec: u32) -> Result<Interval> {
    let inst = LinFormInstance::family(n, y, z)?;
    omega(&inst, prec)
}

/// Integer `log B` convenience for `B = e`.
pub fn unit_log_b(prec: u32) -> Interval {
    Interval::from_int(BigInt::from(1), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::Decimal;
    use rand::{Rng, SeedableRng};

    const P: u32 = 240;

    fn within(i: &Interval, reference: &str) -> bool {
        let r: Decimal = reference.parse().unwrap();
        let w = Decimal::new(1, r.exp10()).to_interval(P);
        let ri = r.to_interval(P);
        let lo = &ri - &w;
        let hi = &ri + &w;
        i.lo() >= lo.lo() && i.hi() <= hi.hi()
    }

    #[test]
    fn heights() {
        assert!(within(&log_height(71, 1, P).unwrap(), "4.26267987704131542132945453251"));
        assert!(log_height(1, 1, P).unwrap().contains(&crate::real::Dyadic::zero()));
        let h = log_height(3, 2, P).unwrap();
        let l3 = Interval::from_int(3, P).ln().unwrap();
        assert_eq!(h, l3);
        assert_eq!(log_height(-6, 4, P).unwrap(), l3);
        assert!(log_height(0, 1, P).is_err());
    }

    #[test]
    fn independence() {
        assert!(!multiplicatively_independent(4, 8).unwrap());
        assert!(!multiplicatively_independent(36, 216).unwrap());
        assert!(multiplicatively_independent(12, 18).unwrap());
        assert!(multiplicatively_independent(2, 3).unwrap());
        assert!(multiplicatively_independent(71, 73).unwrap());
        assert!(LinFormInstance::new(9, 27, 1, 1, 1).is_err());
    }

    #[test]
    fn dprime_examples() {
        let inst = LinFormInstance::new(73, 71, 73, 74, 1).unwrap();
        let lb1 = Interval::from_int(73, P).ln().unwrap();
        let lb2 = Interval::from_int(71, P).ln().unwrap();
        // frozen from an independent 50-digit evaluation
        assert!(within(&dprime(&inst, &lb1, &lb2).unwrap(), "34.3729471241072558744591521370"));

        let unit = LinFormInstance::new(2, 3, 1, 1, 1).unwrap();
        let e = Interval::from_int(1, P); // log B = 1 means B = e
        let d = dprime(&unit, &e, &e).unwrap();
        assert!(within(&d, "2.00000000000000000000000000000"));
        assert!(dprime(&unit, &Interval::from_int(0, P), &e).is_err());
    }

    #[test]
    fn dprime_matches_family_form() {
        for (n, y, z) in [(71u64, 73u64, 74u64), (79, 81, 82), (2591, 19807, 19810)] {
            let inst = LinFormInstance::family(n, y, z).unwrap();
            let ln = Interval::from_int(n, P).ln().unwrap();
            let ln2 = Interval::from_int(n + 2, P).ln().unwrap();
            let want = &Interval::from_int(z, P).div(&ln2).unwrap() + &Interval::from_int(y, P).div(&ln).unwrap();
            let got = dprime(&inst, &ln2, &ln).unwrap();
            assert!(got.try_lt(&want).is_none() && want.try_lt(&got).is_none());
        }
    }

    #[test]
    fn laurent_small_branch_unit_heights() {
        let inst = LinFormInstance::new(2, 3, 1, 1, 1).unwrap();
        let e = unit_log_b(P);
        let b = laurent_lower_bound(&inst, &e, &e).unwrap();
        assert!(within(&b, "-2520.00000000000000000000000000"));
        assert_eq!(laurent_large_branch(&inst, &e, &e).unwrap(), Some(false));
    }

    #[test]
    fn laurent_small_branch_family_form() {
        let (n, y, z) = (71u64, 73u64, 74u64);
        let inst = LinFormInstance::family(n, y, z).unwrap();
        let ln = Interval::from_int(n, P).ln().unwrap();
        let ln2 = Interval::from_int(n + 2, P).ln().unwrap();
        let b = laurent_lower_bound(&inst, &ln2, &ln).unwrap();
        let want = -&(&Interval::from_decimal("2520", P).unwrap() * &(&ln * &ln2));
        assert!(b.try_lt(&want).is_none() && want.try_lt(&b).is_none());
        assert!(laurent_holds(&inst, 60).unwrap());
    }

    #[test]
    fn omega_examples() {
        assert!(within(&omega_actual(3, 1, 1, P).unwrap(), "0.510825623765990683205514096304"));
        assert!(within(&omega_actual(71, 73, 74, P).unwrap(), "2.23477169722478875465568881295"));
        let a = omega_actual(10, 7, 7, P).unwrap();
        let b = (&Interval::from_int(10, P).ln().unwrap() - &Interval::from_int(12, P).ln().unwrap()).abs().mul_int(7);
        assert!(a.try_lt(&b).is_none() && b.try_lt(&a).is_none());
        assert!(omega_actual(2, 1, 1, P).is_err());
    }

    #[test]
    fn laurent_sampled() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut n = 0;
        while n < 200 {
            let (p1, p2) = (rng.gen_range(2..=10_000u64), rng.gen_range(2..=10_000u64));
            let Ok(inst) = LinFormInstance::new(p1, p2, rng.gen_range(1..=10_000), rng.gen_range(1..=10_000), 1)
            else {
                continue;
            };
            assert!(laurent_holds(&inst, 60).unwrap(), "{inst:?}");
            n += 1;
        }
    }

    #[test]
    fn derivation_records_each_inequality() {
        let d = derive_family_bounds_report(60).unwrap();
        let verdict = |l: &str| d.steps.iter().find(|s| s.label == l).unwrap().holds;
        assert!(verdict("large-branch-y"));
        assert!(verdict("large-branch-dprime"));
        assert!(verdict("const-0.24"));
        assert!(verdict("const-1.08"));
        assert!(verdict("const-0.039"));
        assert!(verdict("y-ceiling"));
        // frozen from an independent evaluation: first failures at n = 79 and the corner n = 71
        assert!(!verdict("y-lower"));
        assert!(!verdict("omega-upper"));
        assert!(!verdict("n-ceiling"));
        assert!(!verdict("epsilon"));
        assert_eq!(d.n_max, 2592);
        assert_eq!(d.y_max, 19808);
        assert_eq!(d.alt_n_max, 25578);
        assert_eq!(d.alt_y_max, 25578);
        assert!(d.large_branch_root.starts_with("1869.96"));
        let ylow = d.steps.iter().find(|s| s.label == "y-lower").unwrap();
        assert!(ylow.detail.contains("n = 79"), "{}", ylow.detail);
        assert!(derive_family_bounds(60).is_err());
        assert!(derive_family_bounds_report(30).is_err());
    }

    #[test]
    fn derivation_stable_under_doubled_precision() {
        let a = derive_family_bounds_report(60).unwrap();
        let b = derive_family_bounds_report(120).unwrap();
        let va: Vec<bool> = a.steps.iter().map(|s| s.holds).collect();
        let vb: Vec<bool> = b.steps.iter().map(|s| s.holds).collect();
        assert_eq!(va, vb);
        assert_eq!((a.n_max, a.y_max, a.alt_n_max), (b.n_max, b.y_max, b.alt_n_max));
    }
}
