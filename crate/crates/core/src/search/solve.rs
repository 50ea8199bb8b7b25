//! Exhaustive solver for a single `a^x + b^y = c^z` on a finite range.

use num_bigint::BigUint;
use num_traits::Zero;

use super::congruence::residue_set;
use super::{Certificate, CertificateKind, EquationInstance, EquationSpec, SearchRange, Solution};
use crate::arith::{mul_mod_u64, pow_mod_u64, power_exponent_of, small_primes};
use crate::error::{Error, Result};

/// The first `count` primes not dividing `a b c`.
pub fn default_sieve(eq: &EquationInstance, count: usize) -> Vec<u64> {
    small_primes(10_000)
        .into_iter()
        .filter(|&p| p > 2 && !eq.a.is_multiple_of(p) && !eq.b.is_multiple_of(p) && !eq.c.is_multiple_of(p))
        .take(count)
        .collect()
}

struct Filter {
    m: u64,
    /// residues reachable by `b^y` over the y range
    b_res: Vec<bool>,
    a_mod: u64,
    c_mod: u64,
}

/// All solutions in `range`. For each `z` and each `x` with `a^x < c^z`, the
/// difference `c^z - a^x` is tested for being an admissible power of `b`;
/// sieve moduli discard `(x, z)` whose difference has no matching residue.
pub fn solve_general(
    eq: &EquationInstance,
    range: &SearchRange,
    sieve: Option<&[u64]>,
    digits: u32,
) -> Result<Certificate> {
    if eq.a == 1 && !range.x.is_bounded() {
        return Err(Error::invalid("x must be bounded when a = 1"));
    }
    let mut filters: Vec<Filter> = sieve
        .unwrap_or(&[])
        .iter()
        .map(|&m| {
            if m < 2 {
                return Err(Error::invalid("sieve moduli must be at least 2"));
            }
            Ok(Filter { m, b_res: residue_set(eq.b, &range.y, m), a_mod: eq.a % m, c_mod: eq.c % m })
        })
        .collect::<Result<_>>()?;
    let (a, b, c) = (BigUint::from(eq.a), BigUint::from(eq.b), BigUint::from(eq.c));
    let mut solutions = Vec::new();
    for z in range.z.iter()? {
        let cz = c.pow(u32::try_from(z).map_err(|_| Error::TooLarge("z".into()))?);
        let cz_mod: Vec<u64> = filters.iter().map(|f| pow_mod_u64(f.c_mod, z, f.m)).collect();
        let mut x = range.x.min;
        let mut ax = a.pow(u32::try_from(x).map_err(|_| Error::TooLarge("x".into()))?);
        let mut ax_mod: Vec<u64> = filters.iter().map(|f| pow_mod_u64(f.a_mod, x, f.m)).collect();
        loop {
            if range.x.max.is_some_and(|mx| x > mx) || (eq.a > 1 && ax >= cz) {
                break;
            }
            if range.x.parity.admits(x) && ax < cz {
                let pass = filters
                    .iter()
                    .zip(&cz_mod)
                    .zip(&ax_mod)
                    .all(|((f, &czm), &axm)| f.b_res[((czm + f.m - axm) % f.m) as usize]);
                if pass {
                    let r = &cz - &ax;
                    if !r.is_zero() {
                        if let Some(y) = power_exponent_of(&r, &b)? {
                            if range.y.contains(y) {
                                solutions.push(Solution::triple(x, y, z));
                            }
                        }
                    }
                }
            }
            x += 1;
            ax *= &a;
            for (v, f) in ax_mod.iter_mut().zip(filters.iter_mut()) {
                *v = mul_mod_u64(*v, f.a_mod, f.m);
            }
        }
    }
    solutions.sort();
    let kind = if !solutions.is_empty() {
        CertificateKind::SolutionList { solutions }
    } else if let Some(m) = sieve {
        CertificateKind::SieveEmpty { moduli: m.to_vec() }
    } else {
        CertificateKind::ExhaustiveEmpty
    };
    Ok(Certificate::new(EquationSpec::Instance(*eq), *range, kind, digits))
}
