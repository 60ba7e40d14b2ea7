use alloc::string::String;
use alloc::vec::Vec;

use super::field::Field;
use super::matrix::GradedMatrix;
use super::poly::{Homogeneity, MultiPoly};
use super::PolyError;

/// A weighted polynomial ring: named variables with positive integer
/// degrees. The coefficient field is carried by the element type parameter
/// of the structures built over the spec.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedRingSpec {
    vars: Vec<String>,
    weights: Vec<u32>,
}

impl WeightedRingSpec {
    pub fn new(vars: Vec<String>, weights: Vec<u32>) -> Result<Self, PolyError> {
        if vars.len() != weights.len() {
            return Err(PolyError::ShapeMismatch);
        }
        if weights.contains(&0) {
            return Err(PolyError::ZeroWeight);
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(WeightedRingSpec { vars, weights })
    }

    pub fn with_unit_weights(names: &[&str]) -> Result<Self, PolyError> {
        Self::new(
            names.iter().map(|s| String::from(*s)).collect(),
            alloc::vec![1; names.len()],
        )
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn find_var(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// True when every variable has degree 1 (a standard graded ring).
    pub fn is_standard(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn total_weight(&self) -> i64 {
        self.weights.iter().map(|&w| i64::from(w)).sum()
    }
}

/// A graded quotient `R = Q/I` of the weighted polynomial ring `Q`,
/// presented by homogeneous relations of positive degree. An empty relation
/// list presents the polynomial ring itself.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingPresentation<F: Field> {
    spec: WeightedRingSpec,
    relations: Vec<MultiPoly<F>>,
}

impl<F: Field> RingPresentation<F> {
    pub fn new(spec: WeightedRingSpec, relations: Vec<MultiPoly<F>>) -> Result<Self, PolyError> {
        for (index, r) in relations.iter().enumerate() {
            match super::weighted_degree(r, &spec) {
                Ok(Homogeneity::Homogeneous(d)) if d > 0 => {}
                _ => return Err(PolyError::BadRelation { index }),
            }
        }
        Ok(RingPresentation { spec, relations })
    }

    pub fn polynomial(spec: WeightedRingSpec) -> Self {
        RingPresentation {
            spec,
            relations: Vec::new(),
        }
    }

    pub fn spec(&self) -> &WeightedRingSpec {
        &self.spec
    }

    pub fn relations(&self) -> &[MultiPoly<F>] {
        &self.relations
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_empty()
    }
}

/// A finitely presented graded module `M = coker(presentation)` over a
/// ring presentation; entries of the presentation matrix are ambient lifts,
/// reduction modulo the ring relations happens in the Groebner layer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModulePresentation<F: Field> {
    ring: RingPresentation<F>,
    matrix: GradedMatrix<F>,
}

impl<F: Field> ModulePresentation<F> {
    pub fn new(ring: RingPresentation<F>, matrix: GradedMatrix<F>) -> Self {
        ModulePresentation { ring, matrix }
    }

    /// The free module with the given generator degrees (no relations).
    pub fn free(ring: RingPresentation<F>, degrees: Vec<i64>) -> Self {
        let matrix = GradedMatrix::zero_columns(degrees);
        ModulePresentation { ring, matrix }
    }

    /// The ring viewed as a module over itself.
    pub fn ring_module(ring: RingPresentation<F>) -> Self {
        Self::free(ring, alloc::vec![0])
    }

    /// Cyclic quotient `R/(g_1, ..., g_k)` presented by a single row.
    pub fn cyclic(
        ring: RingPresentation<F>,
        gens: Vec<MultiPoly<F>>,
    ) -> Result<Self, PolyError> {
        let mut col_degrees = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            match super::weighted_degree(g, ring.spec()) {
                Ok(Homogeneity::Homogeneous(d)) => col_degrees.push(d),
                _ => {
                    return Err(PolyError::InhomogeneousEntry { row: 0, col: i });
                }
            }
        }
        let matrix = GradedMatrix::new(
            ring.spec(),
            alloc::vec![0],
            col_degrees,
            alloc::vec![gens],
        )?;
        Ok(ModulePresentation { ring, matrix })
    }

    /// The residue field `K = R/R_+`.
    pub fn residue_field(ring: RingPresentation<F>) -> Self {
        let n = ring.spec().n_vars();
        let gens: Vec<MultiPoly<F>> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
        Self::cyclic(ring, gens).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &RingPresentation<F> {
        &self.ring
    }

    pub fn presentation(&self) -> &GradedMatrix<F> {
        &self.matrix
    }

    /// Degrees of the generators of the covering free module.
    pub fn generator_degrees(&self) -> &[i64] {
        self.matrix.row_degrees()
    }

    /// The translate `M(a)`: a generator of degree `g` moves to `g - a`.
    pub fn twist(&self, a: i64) -> Self {
        ModulePresentation {
            ring: self.ring.clone(),
            matrix: self.matrix.twist_all(-a),
        }
    }

    /// Block direct sum over a common ring.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        Ok(ModulePresentation {
            ring: self.ring.clone(),
            matrix: self.matrix.direct_sum(&other.matrix),
        })
    }
}
