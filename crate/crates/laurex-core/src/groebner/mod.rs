//! Buchberger's algorithm for homogeneous submodules of graded free
//! modules, normal forms, syzygies, and Hilbert-series numerators of
//! monomial modules.
//!
//! Computation over a quotient ring `R = Q/I` is implemented as computation
//! over the ambient polynomial ring `Q` with the relation generators times
//! each free-module generator appended, so one engine serves rings and
//! quotients alike.

mod engine;
mod modvec;
mod numerator;
mod order;

pub use engine::{buchberger, buchberger_with_syzygies, syzygy_matrix, GroebnerBasis};
pub use modvec::{ModVec, VectorDegree};
pub use numerator::monomial_hilbert_numerator;
pub use order::MonomialOrder;

use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroebnerError {
    /// Generator at the given index is not homogeneous.
    Inhomogeneous { index: usize },
    /// Generator list and degree list lengths differ.
    ShapeMismatch,
}

impl fmt::Display for GroebnerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroebnerError::Inhomogeneous { index } => {
                write!(f, "generator {index} is not homogeneous")
            }
            GroebnerError::ShapeMismatch => write!(f, "generator and degree lists differ in length"),
        }
    }
}
