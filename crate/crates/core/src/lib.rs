//! Verification toolkit for the exponential Diophantine family
//! `(n-1)^x + (n+2)^y = n^z`.
//!
//! The crate mechanizes the computable parts of the argument that the only
//! positive solutions are `(n, x, y, z) = (3, 2, 1, 2)` and `(3, 1, 2, 3)`:
//!
//! - [`arith`]: exact integer primitives (Jacobi symbol, modular powers,
//!   integer roots, perfect-power detection, multiplicative orders, primality).
//! - [`real`]: interval arithmetic over dyadic rationals with directed
//!   rounding, used wherever a real inequality has to be certified.
//! - [`classnum`]: class numbers `h(-4D)` by reduced-form counting and the
//!   Hua-type upper bound.
//! - [`lucas`]: Lucas sequences, primitive divisors and the odd-index
//!   defective table.
//! - [`quadrep`]: representations `D1 X^2 + D2 Y^2 = k^Z`, their classes and
//!   the small-instance descent checks.
//! - [`linforms`]: heights, the two-logarithm lower bound and the bound
//!   derivation chain for the `x = 1` branch.
//! - [`search`]: sieved exhaustive searches, congruence certificates and the
//!   end-to-end theorem report.

pub mod arith;
pub mod classnum;
pub mod error;
pub mod linforms;
pub mod lucas;
pub mod quadrep;
pub mod real;
pub mod search;

pub use error::{Error, Result};

/// Version string recorded in every certificate.
pub const TOOL_VERSION: &str = concat!("expdio ", env!("CARGO_PKG_VERSION"));

/// Default working precision in significant decimal digits.
pub const DEFAULT_PRECISION_DIGITS: u32 = 60;
