use alloc::vec::Vec;

use crate::polyring::{Field, Homogeneity, Monomial, MultiPoly, WeightedRingSpec};

use super::order::MonomialOrder;

/// An element of a free module over the ambient polynomial ring, stored as
/// one polynomial per generator position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModVec<F: Field> {
    comps: Vec<MultiPoly<F>>,
}

impl<F: Field> ModVec<F> {
    pub fn zero(rank: usize) -> Self {
        ModVec {
            comps: alloc::vec![MultiPoly::zero(); rank],
        }
    }

    pub fn from_components(comps: Vec<MultiPoly<F>>) -> Self {
        ModVec { comps }
    }

    /// `c * m` placed at `pos`.
    pub fn term(rank: usize, pos: usize, m: Monomial, c: F) -> Self {
        let mut v = Self::zero(rank);
        v.comps[pos] = MultiPoly::term(m, c);
        v
    }

    pub fn unit(rank: usize, pos: usize, n_vars: usize) -> Self {
        Self::term(rank, pos, Monomial::one(n_vars), F::one())
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, i: usize) -> &MultiPoly<F> {
        &self.comps[i]
    }

    pub fn components(&self) -> &[MultiPoly<F>] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<MultiPoly<F>> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(MultiPoly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        ModVec {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ModVec {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ModVec {
            comps: self.comps.iter().map(MultiPoly::neg).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        ModVec {
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, p: &MultiPoly<F>) -> Self {
        ModVec {
            comps: self.comps.iter().map(|q| q.mul(p)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        ModVec {
            comps: self.comps.iter().map(|p| p.mul_term(m, c)).collect(),
        }
    }

    pub fn add_term(&mut self, pos: usize, m: Monomial, c: &F) {
        self.comps[pos].add_term(m, c);
    }

    /// Leading module term with respect to `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(usize, Monomial, F)> {
        let mut best: Option<(usize, &Monomial, &F)> = None;
        for (pos, p) in self.comps.iter().enumerate() {
            for (m, c) in p.terms() {
                match best {
                    None => best = Some((pos, m, c)),
                    Some((bp, bm, _)) => {
                        if order
                            .cmp_module_terms((pos, m), (bp, bm))
                            .is_gt()
                        {
                            best = Some((pos, m, c));
                        }
                    }
                }
            }
        }
        best.map(|(p, m, c)| (p, m.clone(), c.clone()))
    }

    /// `Some(pos)` when every nonzero component sits at one position; such
    /// vectors behave like ring elements for pair criteria.
    pub fn single_position(&self) -> Option<usize> {
        let mut found = None;
        for (pos, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if found.is_some() {
                return None;
            }
            found = Some(pos);
        }
        found
    }

    /// Degree of a vector in a free module with the given generator
    /// degrees.
    pub fn degree(&self, spec: &WeightedRingSpec, degrees: &[i64]) -> VectorDegree {
        let mut found: Option<i64> = None;
        for (pos, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            match crate::polyring::weighted_degree(p, spec) {
                Ok(Homogeneity::Homogeneous(d)) => {
                    let total = d + degrees[pos];
                    match found {
                        None => found = Some(total),
                        Some(prev) if prev != total => return VectorDegree::Inhomogeneous,
                        _ => {}
                    }
                }
                _ => return VectorDegree::Inhomogeneous,
            }
        }
        match found {
            None => VectorDegree::Zero,
            Some(d) => VectorDegree::Homogeneous(d),
        }
    }
}

/// Graded degree of a module vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorDegree {
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}
