use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::polyring::Monomial;

/// The one monomial order used throughout: weighted-degree reverse
/// lexicographic on monomials, extended to free modules term-over-position
/// with ties broken by generator index (lower index wins).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn new(weights: Vec<u32>) -> Self {
        MonomialOrder { weights }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Weighted-degree reverse lexicographic comparison.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let da = a.weighted_degree(&self.weights);
        let db = b.weighted_degree(&self.weights);
        match da.cmp(&db) {
            Ordering::Equal => {}
            other => return other,
        }
        // reverse lexicographic: scanning from the last variable, the first
        // difference decides, and the smaller exponent is the larger monomial
        for i in (0..a.n_vars()).rev() {
            let (ea, eb) = (a.exp(i), b.exp(i));
            if ea != eb {
                return eb.cmp(&ea);
            }
        }
        Ordering::Equal
    }

    /// Term-over-position comparison of module terms `(position, monomial)`.
    pub fn cmp_module_terms(
        &self,
        a: (usize, &Monomial),
        b: (usize, &Monomial),
    ) -> Ordering {
        match self.cmp_monomials(a.1, b.1) {
            Ordering::Equal => b.0.cmp(&a.0),
            other => other,
        }
    }
}
