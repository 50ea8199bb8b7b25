//! Searches over `a^x + b^y = c^z` and the family `(n-1)^x + (n+2)^y = n^z`,
//! with the certificates they emit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod congruence;
pub mod family;
pub mod solve;
pub mod theorem;

pub use congruence::{certify_modulus, congruence_certificate, recheck_congruence, residue_set};
pub use family::{family_search_small_n, family_search_x1, X1Options, X1Outcome, X1Stats};
pub use solve::{default_sieve, solve_general};
pub use theorem::{verify_theorem, CaseEntry, Mode, TheoremOptions, TheoremReport};

/// `a^x + b^y = c^z`. `a = 1` is allowed for the degenerate family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EquationInstance {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl EquationInstance {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        if a == 0 || b < 2 || c < 2 {
            return Err(Error::invalid(format!("({a}, {b}, {c}): need a >= 1 and b, c >= 2")));
        }
        Ok(EquationInstance { a, b, c })
    }

    /// `(n - 1, n + 2, n)`.
    pub fn family(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("family parameter n must be at least 2"));
        }
        EquationInstance::new(n - 1, n + 2, n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Any,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(self, e: u64) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => e.is_multiple_of(2),
            Parity::Odd => e % 2 == 1,
        }
    }
}

/// Exponents `e` with `min <= e <= max` (no upper end when `max` is `None`)
/// and the given parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExpRange {
    pub min: u64,
    pub max: Option<u64>,
    pub parity: Parity,
}

impl ExpRange {
    pub fn new(min: u64, max: Option<u64>, parity: Parity) -> Result<Self> {
        if min == 0 {
            return Err(Error::invalid("exponents are positive"));
        }
        if let Some(m) = max {
            if m < min {
                return Err(Error::invalid(format!("empty exponent range {min}..={m}")));
            }
        }
        Ok(ExpRange { min, max, parity })
    }

    pub fn upto(max: u64) -> Self {
        ExpRange { min: 1, max: Some(max), parity: Parity::Any }
    }

    pub fn unbounded() -> Self {
        ExpRange { min: 1, max: None, parity: Parity::Any }
    }

    pub fn fixed(v: u64) -> Self {
        ExpRange { min: v, max: Some(v), parity: Parity::Any }
    }

    pub fn with_parity(mut self, p: Parity) -> Self {
        self.parity = p;
        self
    }

    pub fn with_min(mut self, m: u64) -> Self {
        self.min = m;
        self
    }

    pub fn contains(&self, e: u64) -> bool {
        e >= self.min && self.max.is_none_or(|m| e <= m) && self.parity.admits(e)
    }

    pub fn is_bounded(&self) -> bool {
        self.max.is_some()
    }

    /// Finite members in increasing order.
    pub fn iter(&self) -> Result<impl Iterator<Item = u64> + '_> {
        let max = self.max.ok_or_else(|| Error::invalid("cannot iterate an unbounded exponent range"))?;
        Ok((self.min..=max).filter(move |&e| self.parity.admits(e)))
    }
}

/// Range of the family parameter `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRange {
    pub lo: u64,
    pub hi: u64,
    /// `n = residue (mod modulus)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub congruence: Option<(u64, u64)>,
    /// For `n` at or above this value only `z < 2n` is searched.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_below_2n_from: Option<u64>,
}

impl NRange {
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (self.lo..=self.hi).filter(move |n| self.congruence.is_none_or(|(r, m)| n % m == r))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRange {
    pub x: ExpRange,
    pub y: ExpRange,
    pub z: ExpRange,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<NRange>,
}

impl SearchRange {
    pub fn cube(max: u64) -> Self {
        SearchRange { x: ExpRange::upto(max), y: ExpRange::upto(max), z: ExpRange::upto(max), n: None }
    }

    pub fn unbounded() -> Self {
        SearchRange { x: ExpRange::unbounded(), y: ExpRange::unbounded(), z: ExpRange::unbounded(), n: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Solution {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl Solution {
    pub fn family(n: u64, x: u64, y: u64, z: u64) -> Self {
        Solution { n: Some(n), x, y, z }
    }

    pub fn triple(x: u64, y: u64, z: u64) -> Self {
        Solution { n: None, x, y, z }
    }
}

impl std::fmt::Display for Solution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.n {
            Some(n) => write!(f, "(n, x, y, z) = ({n}, {}, {}, {})", self.x, self.y, self.z),
            None => write!(f, "(x, y, z) = ({}, {}, {})", self.x, self.y, self.z),
        }
    }
}

/// The two solutions of the family equation.
pub fn expected_family_solutions() -> Vec<Solution> {
    vec![Solution::family(3, 1, 2, 3), Solution::family(3, 2, 1, 2)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum EquationSpec {
    Instance(EquationInstance),
    /// `(n-1)^x + (n+2)^y = n^z`
    Family,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateKind {
    SolutionList { solutions: Vec<Solution> },
    ExhaustiveEmpty,
    CongruenceEmpty { modulus: u64 },
    SieveEmpty { moduli: Vec<u64> },
}

impl CertificateKind {
    pub fn solutions(&self) -> &[Solution] {
        match self {
            CertificateKind::SolutionList { solutions } => solutions,
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub tool_version: String,
    pub precision_digits: u32,
    pub equation: EquationSpec,
    pub range: SearchRange,
    #[serde(flatten)]
    pub kind: CertificateKind,
}

impl Certificate {
    pub fn new(equation: EquationSpec, range: SearchRange, kind: CertificateKind, digits: u32) -> Self {
        Certificate {
            tool_version: crate::TOOL_VERSION.to_string(),
            precision_digits: digits,
            equation,
            range,
            kind,
        }
    }

    pub fn solutions(&self) -> &[Solution] {
        self.kind.solutions()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::invalid(format!("malformed certificate: {e}")))
    }
}

/// Re-derives a certificate by a route independent of the one that produced
/// it: direct modular powers for congruence certificates, an unsieved rerun
/// for bounded searches.
pub fn recheck_certificate(cert: &Certificate) -> Result<bool> {
    if let CertificateKind::CongruenceEmpty { .. } = cert.kind {
        return recheck_congruence(cert);
    }
    let again = match cert.equation {
        EquationSpec::Instance(eq) => solve_general(&eq, &cert.range, None, cert.precision_digits)?,
        EquationSpec::Family => {
            let n = cert.range.n.ok_or_else(|| Error::invalid("family certificate without an n range"))?;
            if cert.range.x == ExpRange::fixed(1) {
                let y_hi = cert.range.y.max.ok_or_else(|| Error::invalid("unbounded y range"))?;
                let mut o = X1Options::new(n.lo, n.hi, cert.range.y.min, y_hi);
                o.digits = cert.precision_digits;
                o.workers = rayon::current_num_threads();
                family_search_x1(&o)?.certificate.ok_or_else(|| Error::Verification("incomplete rerun".into()))?
            } else {
                let cap = cert.range.x.max.ok_or_else(|| Error::invalid("unbounded x range"))?;
                family_search_small_n(n.lo, n.hi, cap, cert.precision_digits)?.certificate
            }
        }
    };
    Ok(again.solutions() == cert.solutions())
}

/// `Some(k)` when `v = 2^k`.
pub(crate) fn power_of_two(v: u64) -> Option<u32> {
    v.is_power_of_two().then(|| v.trailing_zeros())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let r = ExpRange::upto(10).with_parity(Parity::Odd).with_min(3);
        assert_eq!(r.iter().unwrap().collect::<Vec<_>>(), vec![3, 5, 7, 9]);
        assert!(r.contains(9) && !r.contains(11) && !r.contains(4));
        assert!(ExpRange::unbounded().iter().is_err());
        assert!(ExpRange::new(0, None, Parity::Any).is_err());
        assert!(ExpRange::new(5, Some(4), Parity::Any).is_err());
        let n = NRange { lo: 71, hi: 100, congruence: Some((7, 8)), z_below_2n_from: None };
        assert_eq!(n.iter().collect::<Vec<_>>(), vec![71, 79, 87, 95]);
    }

    #[test]
    fn equation_validation() {
        assert!(EquationInstance::new(0, 2, 3).is_err());
        assert!(EquationInstance::new(1, 4, 2).is_ok());
        assert_eq!(EquationInstance::family(3).unwrap(), EquationInstance::new(2, 5, 3).unwrap());
    }

    #[test]
    fn certificate_json_roundtrip() {
        let c = Certificate::new(
            EquationSpec::Instance(EquationInstance::new(2, 5, 3).unwrap()),
            SearchRange::cube(100),
            CertificateKind::SolutionList { solutions: vec![Solution::triple(1, 2, 3)] },
            60,
        );
        let s = c.to_json();
        let back = Certificate::from_json(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), s);
        assert!(Certificate::from_json("{}").is_err());
    }

    #[test]
    fn recheck_detects_tampering() {
        let eq = EquationInstance::new(2, 5, 3).unwrap();
        let mut c = solve_general(&eq, &SearchRange::cube(30), Some(&[7, 11]), 60).unwrap();
        assert!(recheck_certificate(&c).unwrap());
        c.kind = CertificateKind::SieveEmpty { moduli: vec![7, 11] };
        assert!(!recheck_certificate(&c).unwrap());
        let small = family_search_small_n(2, 8, 30, 60).unwrap();
        assert!(recheck_certificate(&small.certificate).unwrap());
        assert!(recheck_certificate(&small.per_n[0].1).unwrap());
        let x1 = family_search_x1(&X1Options::new(71, 80, 73, 200)).unwrap();
        assert!(recheck_certificate(&x1.certificate.unwrap()).unwrap());
    }
}
