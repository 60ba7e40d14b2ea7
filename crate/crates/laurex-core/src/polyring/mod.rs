//! Weighted multivariate polynomial arithmetic over an exact field, graded
//! free modules, graded matrices, and ring/module presentations.

mod field;
mod matrix;
mod poly;
mod presentation;

pub use field::{Field, Fp};
pub use matrix::GradedMatrix;
pub use poly::{Homogeneity, Monomial, MultiPoly};
pub use presentation::{ModulePresentation, RingPresentation, WeightedRingSpec};

use alloc::string::String;
use core::fmt;

use crate::ratfun::{HilbertRational, LaurentPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    /// The zero polynomial has no degree.
    ZeroPolynomial,
    /// A matrix entry is not homogeneous of the degree forced by its row
    /// and column degrees.
    InhomogeneousEntry { row: usize, col: usize },
    /// A ring relation is zero or not homogeneous of positive degree.
    BadRelation { index: usize },
    DuplicateVariable(String),
    ZeroWeight,
    /// Dimension mismatch between degree lists and matrix data.
    ShapeMismatch,
    /// Two presentations over different rings were combined.
    RingMismatch,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ZeroPolynomial => write!(f, "the zero polynomial has no degree"),
            PolyError::InhomogeneousEntry { row, col } => {
                write!(f, "matrix entry ({row}, {col}) is not homogeneous of the required degree")
            }
            PolyError::BadRelation { index } => {
                write!(f, "relation {index} is not homogeneous of positive degree")
            }
            PolyError::DuplicateVariable(name) => write!(f, "duplicate variable '{name}'"),
            PolyError::ZeroWeight => write!(f, "variable weights must be positive"),
            PolyError::ShapeMismatch => write!(f, "matrix shape does not match degree lists"),
            PolyError::RingMismatch => write!(f, "operands live over different rings"),
        }
    }
}

/// Common weighted degree of all monomials of `p`, or the inhomogeneity
/// marker; the zero polynomial is an error.
pub fn weighted_degree<F: Field>(
    p: &MultiPoly<F>,
    spec: &WeightedRingSpec,
) -> Result<Homogeneity, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut deg = None;
    for (m, _) in p.terms() {
        let d = m.weighted_degree(spec.weights());
        match deg {
            None => deg = Some(d),
            Some(prev) if prev != d => return Ok(Homogeneity::Inhomogeneous),
            _ => {}
        }
    }
    Ok(Homogeneity::Homogeneous(deg.unwrap()))
}

/// The translate `M(a)`, with `M(a)_n = M_{a+n}`.
pub fn twist<F: Field>(m: &ModulePresentation<F>, a: i64) -> ModulePresentation<F> {
    m.twist(a)
}

/// Hilbert series of a graded free module: `sum_k t^{a_k} / prod_j (1 - t^{d_j})`.
pub fn free_hilbert(generator_degrees: &[i64], spec: &WeightedRingSpec) -> HilbertRational {
    let mut num = LaurentPoly::zero();
    for &a in generator_degrees {
        num.add_term(a, &num_rational::BigRational::from_integer(num_bigint::BigInt::from(1)));
    }
    HilbertRational::new(num, spec.weights().iter().copied())
}
