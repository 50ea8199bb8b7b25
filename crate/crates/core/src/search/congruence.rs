//! Congruence obstructions: a modulus `m` such that no admissible exponent
//! triple satisfies `a^x + b^y = c^z (mod m)`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{Certificate, CertificateKind, EquationInstance, EquationSpec, ExpRange, SearchRange};
use crate::arith::{mul_mod_u64, pow_mod_u64};
use crate::error::{Error, Result};

/// Largest modulus the residue tables are built for.
pub const MAX_MODULUS: u64 = 1 << 24;

/// `{ base^e mod m : e in range }` as a membership table.
///
/// The pair `(base^e mod m, e mod 2)` determines its successor, so the walk
/// stops at the first repeated pair or past the range end.
pub fn residue_set(base: u64, range: &ExpRange, m: u64) -> Vec<bool> {
    let mu = m as usize;
    let mut seen = vec![false; 2 * mu];
    let mut set = vec![false; mu];
    let b = base % m;
    let mut e = range.min;
    let mut v = pow_mod_u64(base, e, m);
    loop {
        if range.max.is_some_and(|mx| e > mx) {
            break;
        }
        let st = 2 * v as usize + (e % 2) as usize;
        if seen[st] {
            break;
        }
        seen[st] = true;
        if range.parity.admits(e) {
            set[v as usize] = true;
        }
        e += 1;
        v = mul_mod_u64(v, b, m);
    }
    set
}

fn members(set: &[bool]) -> Vec<u64> {
    set.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}

fn check_modulus(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::invalid("modulus must be at least 2"));
    }
    if m > MAX_MODULUS {
        return Err(Error::TooLarge(format!("modulus {m}")));
    }
    Ok(())
}

/// `true` when `m` rules out every exponent triple in `range`.
pub fn certify_modulus(eq: &EquationInstance, range: &SearchRange, m: u64) -> Result<bool> {
    check_modulus(m)?;
    let a = members(&residue_set(eq.a, &range.x, m));
    let b = members(&residue_set(eq.b, &range.y, m));
    let c = residue_set(eq.c, &range.z, m);
    let (small, large) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
    for &u in small {
        for &v in large {
            if c[((u + v) % m) as usize] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Least `m` in `2..=m_max` refuting the equation on `range`.
pub fn congruence_certificate(
    eq: &EquationInstance,
    range: &SearchRange,
    m_max: u64,
    digits: u32,
) -> Result<Option<Certificate>> {
    if m_max < 2 {
        return Err(Error::invalid("m_max must be at least 2"));
    }
    for m in 2..=m_max {
        if certify_modulus(eq, range, m)? {
            return Ok(Some(modulus_certificate(eq, range, m, digits)));
        }
    }
    Ok(None)
}

pub fn modulus_certificate(eq: &EquationInstance, range: &SearchRange, m: u64, digits: u32) -> Certificate {
    Certificate::new(EquationSpec::Instance(*eq), *range, CertificateKind::CongruenceEmpty { modulus: m }, digits)
}

/// Independent re-derivation: direct modular powers over a window of
/// `2m + 2` exponents from each range start, then a set comparison.
pub fn recheck_congruence(cert: &Certificate) -> Result<bool> {
    let CertificateKind::CongruenceEmpty { modulus } = cert.kind else {
        return Err(Error::invalid("not a congruence certificate"));
    };
    let EquationSpec::Instance(eq) = cert.equation else {
        return Err(Error::invalid("congruence certificates name a single equation"));
    };
    check_modulus(modulus)?;
    let bm = BigUint::from(modulus);
    let values = |base: u64, r: &ExpRange| -> BTreeSet<u64> {
        let end = r.min.saturating_add(2 * modulus + 2);
        let end = r.max.map_or(end, |mx| mx.min(end));
        (r.min..=end)
            .filter(|&e| r.parity.admits(e))
            .map(|e| BigUint::from(base).modpow(&BigUint::from(e), &bm).to_u64().unwrap())
            .collect()
    };
    let xs = values(eq.a, &cert.range.x);
    let ys = values(eq.b, &cert.range.y);
    let zs = values(eq.c, &cert.range.z);
    let sums: BTreeSet<u64> = xs.iter().flat_map(|u| ys.iter().map(move |v| (u + v) % modulus)).collect();
    Ok(sums.is_disjoint(&zs))
}
