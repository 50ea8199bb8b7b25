//! Searches over the family `(n-1)^x + (n+2)^y = n^z`.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::congruence::{certify_modulus, modulus_certificate};
use super::solve::{default_sieve, solve_general};
use super::{
    Certificate, CertificateKind, EquationInstance, EquationSpec, ExpRange, NRange, Parity, SearchRange, Solution,
};
use crate::arith::{multiplicative_order_u64, small_primes};
use crate::error::{Error, Result};
use crate::real::{bits_for_digits, Dir, Interval};

/// Exponent cap used for `2 < n < 7`.
pub const LOW_N_CAP: u64 = 200;
/// From this `n` on the small-n search only covers `z < 2n`.
pub const Z_BELOW_2N_FROM: u64 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallNOutcome {
    pub certificate: Certificate,
    /// One certificate per `n`, in increasing `n`.
    pub per_n: Vec<(u64, Certificate)>,
}

/// Search range used for a single `n`.
pub fn small_n_range(n: u64, low_cap: u64) -> SearchRange {
    if n < Z_BELOW_2N_FROM {
        return SearchRange::cube(low_cap);
    }
    // (n-1)^x < n^z forces x < 2z, and (n+2)^y < n^z forces y < z
    let z_max = 2 * n - 1;
    SearchRange { x: ExpRange::upto(2 * z_max), y: ExpRange::upto(z_max), z: ExpRange::upto(z_max), n: None }
}

/// All family solutions for `n_lo <= n <= n_hi`; exponents capped at `low_cap`
/// for `n < 7`, `z < 2n` beyond. `n = 2` is settled modulo 2.
pub fn family_search_small_n(n_lo: u64, n_hi: u64, low_cap: u64, digits: u32) -> Result<SmallNOutcome> {
    if n_lo < 2 || n_hi < n_lo {
        return Err(Error::invalid(format!("bad n range {n_lo}..={n_hi}")));
    }
    let per_n: Vec<(u64, Certificate)> = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| -> Result<(u64, Certificate)> {
            let eq = EquationInstance::family(n)?;
            if n == 2 {
                let r = SearchRange::unbounded();
                if !certify_modulus(&eq, &r, 2)? {
                    return Err(Error::Verification("n = 2 is not refuted modulo 2".into()));
                }
                return Ok((n, modulus_certificate(&eq, &r, 2, digits)));
            }
            let r = small_n_range(n, low_cap);
            let sieve = default_sieve(&eq, 4);
            Ok((n, solve_general(&eq, &r, Some(&sieve), digits)?))
        })
        .collect::<Result<_>>()?;
    let mut solutions: Vec<Solution> = per_n
        .iter()
        .flat_map(|(n, c)| c.solutions().iter().map(move |s| Solution::family(*n, s.x, s.y, s.z)))
        .collect();
    solutions.sort();
    let range = SearchRange {
        n: Some(NRange { lo: n_lo, hi: n_hi, congruence: None, z_below_2n_from: Some(Z_BELOW_2N_FROM) }),
        ..SearchRange::cube(low_cap)
    };
    let kind = if solutions.is_empty() {
        CertificateKind::ExhaustiveEmpty
    } else {
        CertificateKind::SolutionList { solutions }
    };
    Ok(SmallNOutcome { certificate: Certificate::new(EquationSpec::Family, range, kind, digits), per_n })
}

#[derive(Debug, Clone)]
pub struct X1Options {
    pub n_lo: u64,
    pub n_hi: u64,
    pub y_lo: u64,
    pub y_hi: u64,
    pub workers: usize,
    pub digits: u32,
    /// Replace the equation by an identity so every visited `(n, y)` reports
    /// a hit.
    pub control: bool,
    pub checkpoint: Option<PathBuf>,
    pub time_budget: Option<Duration>,
    pub sieve_primes: usize,
    /// `n` values handled between checkpoints.
    pub slice: usize,
}

impl X1Options {
    pub fn new(n_lo: u64, n_hi: u64, y_lo: u64, y_hi: u64) -> Self {
        X1Options {
            n_lo,
            n_hi,
            y_lo,
            y_hi,
            workers: 1,
            digits: crate::DEFAULT_PRECISION_DIGITS,
            control: false,
            checkpoint: None,
            time_budget: None,
            sieve_primes: 8,
            slice: 32,
        }
    }

    /// `71 <= n <= 2590`, `73 <= y <= 19807`.
    pub fn stated_range() -> Self {
        X1Options::new(71, 2590, 73, 19807)
    }

    pub fn smoke_range() -> Self {
        X1Options::new(71, 511, 73, 19807)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct X1Stats {
    pub n_values: u64,
    pub pairs: u64,
    pub candidates: u64,
    pub sieve_survivors: u64,
    pub exact_checks: u64,
}

impl X1Stats {
    fn add(&mut self, o: &X1Stats) {
        self.n_values += o.n_values;
        self.pairs += o.pairs;
        self.candidates += o.candidates;
        self.sieve_survivors += o.sieve_survivors;
        self.exact_checks += o.exact_checks;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct X1Outcome {
    /// Present once every `n` has been scanned.
    pub certificate: Option<Certificate>,
    pub complete: bool,
    /// First `n` not yet scanned.
    pub next_n: u64,
    pub solutions: Vec<Solution>,
    pub stats: X1Stats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Checkpoint {
    tool_version: String,
    n_lo: u64,
    n_hi: u64,
    y_lo: u64,
    y_hi: u64,
    control: bool,
    next_n: u64,
    solutions: Vec<Solution>,
    stats: X1Stats,
}

impl Checkpoint {
    fn matches(&self, o: &X1Options) -> bool {
        (self.n_lo, self.n_hi, self.y_lo, self.y_hi, self.control) == (o.n_lo, o.n_hi, o.y_lo, o.y_hi, o.control)
    }

    fn load(path: &Path) -> Result<Option<Checkpoint>> {
        match std::fs::read_to_string(path) {
            Ok(s) => serde_json::from_str(&s)
                .map(Some)
                .map_err(|e| Error::invalid(format!("unreadable checkpoint {}: {e}", path.display()))),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::invalid(format!("cannot read checkpoint {}: {e}", path.display()))),
        }
    }

    fn store(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let body = serde_json::to_string_pretty(self).expect("checkpoint serializes");
        std::fs::write(&tmp, body)
            .and_then(|_| std::fs::rename(&tmp, path))
            .map_err(|e| Error::invalid(format!("cannot write checkpoint {}: {e}", path.display())))
    }
}

/// Residue tables for one sieve prime.
struct PrimeTable {
    p: u32,
    c: u32,
    pow_n: Vec<u32>,
    pow_b: Vec<u32>,
}

impl PrimeTable {
    fn new(n: u64, p: u64) -> Result<Self> {
        let table = |base: u64| -> Result<Vec<u32>> {
            let ord = multiplicative_order_u64(base % p, p)?;
            let mut v = Vec::with_capacity(ord as usize);
            let mut acc = 1u64;
            for _ in 0..ord {
                v.push(acc as u32);
                acc = acc * (base % p) % p;
            }
            Ok(v)
        };
        Ok(PrimeTable { p: p as u32, c: ((n - 1) % p) as u32, pow_n: table(n)?, pow_b: table(n + 2)? })
    }

    /// `n - 1 + (n+2)^y = n^z (mod p)`
    fn passes(&self, y: u64, z: u64) -> bool {
        let l = (self.c + self.pow_b[(y % self.pow_b.len() as u64) as usize]) % self.p;
        l == self.pow_n[(z % self.pow_n.len() as u64) as usize]
    }
}

fn sieve_primes(n: u64, count: usize) -> Vec<u64> {
    small_primes(2_000)
        .into_iter()
        .filter(|&p| p > 2 && !n.is_multiple_of(p) && !(n - 1).is_multiple_of(p) && !(n + 2).is_multiple_of(p))
        .take(count)
        .collect()
}

const FRAC: u32 = 96;

/// `floor` and `ceil` of `log(n+2)/log(n) * 2^96`.
fn ratio_fixed(n: u64, digits: u32) -> Result<(u128, u128)> {
    let prec = bits_for_digits(digits).max(2 * FRAC);
    let r = Interval::from_int(n + 2, prec).ln()?.div(&Interval::from_int(n, prec).ln()?)?;
    let lo = r.lo().to_fixed(FRAC, Dir::Down).to_u128();
    let hi = r.hi().to_fixed(FRAC, Dir::Up).to_u128();
    match (lo, hi) {
        (Some(lo), Some(hi)) => Ok((lo, hi)),
        _ => Err(Error::TooLarge("ratio does not fit the fixed-point window".into())),
    }
}

/// Integers `z` that can satisfy `n - 1 + (n+2)^y = n^z` for this `y`.
///
/// Such `z` lies in `(y r, y r + 1)` with `r = log(n+2)/log n`, since
/// `0 < log(1 + (n-1)/(n+2)^y) < log n`. With `r` enclosed in
/// `[r_lo, r_hi]` this gives at most two integers when the enclosure of `y r`
/// is narrower than 1.
fn candidates(y: u64, r_lo: u128, r_hi: u128) -> Result<(u64, u64)> {
    let lo = y as u128 * r_lo;
    let hi = y as u128 * r_hi;
    if hi - lo >= 1u128 << FRAC {
        return Err(Error::Precision(format!("enclosure of y*log(n+2)/log(n) too wide at y = {y}")));
    }
    let first = (lo >> FRAC) + u128::from(lo & ((1u128 << FRAC) - 1) != 0);
    let last = (hi >> FRAC) + 1;
    Ok((first as u64, last as u64))
}

fn scan_n(n: u64, o: &X1Options) -> Result<(Vec<Solution>, X1Stats)> {
    let (r_lo, r_hi) = ratio_fixed(n, o.digits)?;
    let tables: Vec<PrimeTable> =
        sieve_primes(n, o.sieve_primes).into_iter().map(|p| PrimeTable::new(n, p)).collect::<Result<_>>()?;
    if tables.len() < 3 {
        return Err(Error::invalid("fewer than three sieve primes available"));
    }
    let mut stats = X1Stats { n_values: 1, ..Default::default() };
    let mut sols = Vec::new();
    let (bn, bb) = (BigUint::from(n), BigUint::from(n + 2));
    for y in o.y_lo..=o.y_hi {
        stats.pairs += 1;
        let (first, last) = candidates(y, r_lo, r_hi)?;
        for z in first.max(y + 1)..=last {
            stats.candidates += 1;
            if o.control {
                sols.push(Solution::family(n, 1, y, z));
                break;
            }
            if !tables.iter().all(|t| t.passes(y, z)) {
                continue;
            }
            stats.sieve_survivors += 1;
            stats.exact_checks += 1;
            let lhs = BigUint::from(n - 1) + bb.pow(y as u32);
            if lhs == bn.pow(z as u32) {
                sols.push(Solution::family(n, 1, y, z));
            }
        }
    }
    Ok((sols, stats))
}

/// Candidate-`z` search of `n - 1 + (n+2)^y = n^z` over `n = 7 (mod 8)`.
pub fn family_search_x1(o: &X1Options) -> Result<X1Outcome> {
    if o.n_lo < 3 || o.n_hi < o.n_lo || o.y_lo == 0 || o.y_hi < o.y_lo {
        return Err(Error::invalid("empty or invalid x = 1 search range"));
    }
    if o.y_hi > u32::MAX as u64 / 2 {
        return Err(Error::TooLarge("y range".into()));
    }
    if o.digits < crate::DEFAULT_PRECISION_DIGITS {
        return Err(Error::Precision(format!("{} digits is below the 60-digit floor", o.digits)));
    }
    let start = Instant::now();
    let mut state = Checkpoint {
        tool_version: crate::TOOL_VERSION.to_string(),
        n_lo: o.n_lo,
        n_hi: o.n_hi,
        y_lo: o.y_lo,
        y_hi: o.y_hi,
        control: o.control,
        next_n: o.n_lo,
        solutions: Vec::new(),
        stats: X1Stats::default(),
    };
    if let Some(path) = &o.checkpoint {
        if let Some(saved) = Checkpoint::load(path)? {
            if !saved.matches(o) {
                return Err(Error::invalid(format!("checkpoint {} belongs to a different range", path.display())));
            }
            state = saved;
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(o.workers.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let ns: Vec<u64> = (state.next_n..=o.n_hi).filter(|n| n % 8 == 7).collect();
    let mut complete = true;
    let slices: Vec<&[u64]> = ns.chunks(o.slice.max(1)).collect();
    for (i, slice) in slices.iter().enumerate() {
        let results: Vec<(Vec<Solution>, X1Stats)> =
            pool.install(|| slice.par_iter().map(|&n| scan_n(n, o)).collect::<Result<_>>())?;
        for (s, st) in results {
            state.solutions.extend(s);
            state.stats.add(&st);
        }
        state.solutions.sort();
        state.next_n = slice.last().unwrap() + 1;
        if let Some(path) = &o.checkpoint {
            state.store(path)?;
        }
        if i + 1 < slices.len() && o.time_budget.is_some_and(|b| start.elapsed() >= b) {
            complete = false;
            break;
        }
    }
    if complete {
        state.next_n = o.n_hi + 1;
    }
    let certificate = complete.then(|| {
        let range = SearchRange {
            x: ExpRange::fixed(1),
            y: ExpRange { min: o.y_lo, max: Some(o.y_hi), parity: Parity::Any },
            z: ExpRange { min: o.y_lo + 1, max: Some(2 * o.y_hi - 1), parity: Parity::Any },
            n: Some(NRange { lo: o.n_lo, hi: o.n_hi, congruence: Some((7, 8)), z_below_2n_from: None }),
        };
        let kind = if state.solutions.is_empty() {
            CertificateKind::ExhaustiveEmpty
        } else {
            CertificateKind::SolutionList { solutions: state.solutions.clone() }
        };
        Certificate::new(EquationSpec::Family, range, kind, o.digits)
    });
    Ok(X1Outcome { certificate, complete, next_n: state.next_n, solutions: state.solutions, stats: state.stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_n_examples() {
        let out = family_search_small_n(3, 3, LOW_N_CAP, 60).unwrap();
        assert_eq!(out.certificate.solutions(), &[Solution::family(3, 1, 2, 3), Solution::family(3, 2, 1, 2)]);
        let out = family_search_small_n(4, 4, LOW_N_CAP, 60).unwrap();
        assert!(out.certificate.solutions().is_empty());
        let out = family_search_small_n(2, 2, LOW_N_CAP, 60).unwrap();
        assert_eq!(out.per_n[0].1.kind, CertificateKind::CongruenceEmpty { modulus: 2 });
        assert!(family_search_small_n(1, 4, LOW_N_CAP, 60).is_err());
    }

    #[test]
    fn small_n_ranges_cover_z_below_2n() {
        let r = small_n_range(10, LOW_N_CAP);
        assert_eq!(r.z.max, Some(19));
        assert_eq!(small_n_range(6, LOW_N_CAP).z.max, Some(200));
    }

    #[test]
    fn candidate_window() {
        // n = 3 solution 2 + 5^2 = 3^3 sits in the window for y = 2
        let (lo, hi) = ratio_fixed(3, 60).unwrap();
        let (a, b) = candidates(2, lo, hi).unwrap();
        assert!(a <= 3 && 3 <= b && b - a <= 1);
        assert!(candidates(2, lo, lo + (1u128 << 95)).is_err());
    }

    #[test]
    fn x1_search_finds_small_solution_when_range_allows_it() {
        // the solver itself is not tied to n = 7 mod 8 for this helper
        let o = X1Options::new(3, 3, 1, 10);
        let (sols, _) = scan_n(3, &o).unwrap();
        assert_eq!(sols, vec![Solution::family(3, 1, 2, 3)]);
    }

    #[test]
    fn control_mode_visits_every_pair() {
        let mut o = X1Options::new(71, 200, 73, 400);
        o.control = true;
        o.workers = 3;
        let out = family_search_x1(&o).unwrap();
        let ns: Vec<u64> = (71..=200).filter(|n| n % 8 == 7).collect();
        assert_eq!(out.solutions.len(), ns.len() * (400 - 73 + 1));
        let mut seen = std::collections::BTreeSet::new();
        for s in &out.solutions {
            assert!(seen.insert((s.n.unwrap(), s.y)));
        }
        assert_eq!(out.stats.pairs, out.solutions.len() as u64);
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let mut a = X1Options::new(71, 300, 73, 3000);
        a.workers = 1;
        let mut b = a.clone();
        b.workers = 4;
        b.slice = 5;
        let (ra, rb) = (family_search_x1(&a).unwrap(), family_search_x1(&b).unwrap());
        assert_eq!(ra, rb);
        assert_eq!(ra.certificate.unwrap().kind, CertificateKind::ExhaustiveEmpty);
    }

    #[test]
    fn checkpoint_resume() {
        let dir = std::env::temp_dir().join(format!("expdio-ckpt-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("x1.json");
        let _ = std::fs::remove_file(&path);
        let mut o = X1Options::new(71, 400, 73, 2000);
        o.slice = 4;
        o.checkpoint = Some(path.clone());
        o.time_budget = Some(Duration::ZERO);
        let first = family_search_x1(&o).unwrap();
        assert!(!first.complete && first.certificate.is_none());
        assert_eq!(first.next_n, 96);
        o.time_budget = None;
        let resumed = family_search_x1(&o).unwrap();
        let mut fresh = o.clone();
        fresh.checkpoint = None;
        let direct = family_search_x1(&fresh).unwrap();
        assert_eq!(resumed.certificate, direct.certificate);
        assert_eq!(resumed.stats, direct.stats);
        // a finished checkpoint resumes to the same result without rescanning
        let again = family_search_x1(&o).unwrap();
        assert_eq!(again.stats, direct.stats);
        let mut other = o.clone();
        other.n_hi = 500;
        assert!(family_search_x1(&other).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
