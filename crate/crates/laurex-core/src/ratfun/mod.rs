//! Exact arithmetic for univariate Laurent polynomials, Hilbert-shaped
//! rational functions, and their Laurent expansions around 0, 1 and infinity.
//!
//! The central type is [`HilbertRational`], a rational function kept in the
//! shape `q(t) / prod_i (1 - t^{d_i})` that Hilbert series of graded modules
//! naturally take. Denominators are stored as unexpanded factor multisets;
//! expansion to a dense polynomial happens only inside equality tests and
//! arithmetic, which keeps the Hilbert shape visible in rendered output.

mod expansion;
mod hilbert;
mod laurent;
mod parse;

pub use expansion::{Center, LaurentExpansion};
pub use hilbert::{CombineOp, HilbertRational, RatFunError};
pub use laurent::LaurentPoly;
pub use parse::ParseError;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Default number of expansion coefficients when a caller does not specify
/// a truncation; deep enough for every worked example in the test corpus.
pub const DEFAULT_TERMS: usize = 16;

/// The rational `n`.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The rational `n / d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact combination of two rational functions.
pub fn combine(
    op: CombineOp,
    f: &HilbertRational,
    g: &HilbertRational,
) -> Result<HilbertRational, RatFunError> {
    f.combine(op, g)
}

/// Substitutes `t -> 1/t`, normalized back to Hilbert shape via
/// `1/(1 - t^{-d}) = -t^d/(1 - t^d)`.
pub fn invert_variable(f: &HilbertRational) -> HilbertRational {
    f.invert_variable()
}

/// First `terms` Laurent coefficients of `f` around `center`, starting at
/// the true order of the expansion.
pub fn laurent_expand(f: &HilbertRational, center: Center, terms: usize) -> LaurentExpansion {
    f.expand(center, terms)
}

/// Order of an expansion; `None` is the sentinel for the zero expansion
/// (order plus infinity).
pub fn expansion_order(e: &LaurentExpansion) -> Option<i64> {
    e.order()
}

/// Exact equality of rational functions, decided by cross-multiplication of
/// cleared numerators.
pub fn equal(f: &HilbertRational, g: &HilbertRational) -> bool {
    f.equal(g)
}
