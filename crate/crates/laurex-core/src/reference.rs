//! Independent brute-force reference routes used by the test suites to
//! cross-check the Groebner-side results: explicit standard-monomial bases
//! of fixed internal degrees and dense linear algebra over the field.
//!
//! Nothing here feeds the main computation paths; the point is that ranks
//! of degree strands are obtained by row reduction on concrete matrices,
//! not through Hilbert-series bookkeeping.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::groebner::{buchberger, GroebnerBasis, GroebnerError, ModVec};
use crate::polyring::{Field, ModulePresentation, Monomial, WeightedRingSpec};
use crate::resolve::FreeResolution;

/// Rank of a dense matrix over the field by Gaussian elimination.
pub fn matrix_rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for c in col..n_cols {
            rows[rank][c] = rows[rank][c].mul(&inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..n_cols {
                    let delta = rows[rank][c].mul(&factor);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// All monomials of the given weighted degree.
pub fn monomials_of_degree(spec: &WeightedRingSpec, degree: i64) -> Vec<Monomial> {
    fn rec(
        weights: &[u32],
        var: usize,
        remaining: i64,
        acc: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if var == weights.len() {
            if remaining == 0 {
                out.push(Monomial::from_exps(acc.clone()));
            }
            return;
        }
        let w = i64::from(weights[var]);
        let mut e = 0u32;
        while i64::from(e) * w <= remaining {
            acc.push(e);
            rec(weights, var + 1, remaining - i64::from(e) * w, acc, out);
            acc.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if degree >= 0 {
        rec(spec.weights(), 0, degree, &mut Vec::new(), &mut out);
    }
    out
}

/// A basis, in one internal degree, of a quotient of a graded free module
/// by the submodule with the given Groebner basis: the standard monomials
/// `(position, monomial)` outside the leading-term module.
pub struct StandardBasis<F: Field> {
    gb: GroebnerBasis<F>,
    free_degrees: Vec<i64>,
    elements: Vec<(usize, Monomial)>,
    index: BTreeMap<(usize, Monomial), usize>,
}

impl<F: Field> StandardBasis<F> {
    pub fn new(
        spec: &WeightedRingSpec,
        gb: GroebnerBasis<F>,
        free_degrees: &[i64],
        internal_degree: i64,
    ) -> Self {
        let mut elements = Vec::new();
        for (pos, &gen_degree) in free_degrees.iter().enumerate() {
            for mono in monomials_of_degree(spec, internal_degree - gen_degree) {
                let reducible = gb
                    .leads()
                    .iter()
                    .any(|(lp, lm)| *lp == pos && lm.divides(&mono));
                if !reducible {
                    elements.push((pos, mono));
                }
            }
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        StandardBasis {
            gb,
            free_degrees: free_degrees.to_vec(),
            elements,
            index,
        }
    }

    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[(usize, Monomial)] {
        &self.elements
    }

    /// Coordinates of a vector in this basis, after normal-form reduction.
    /// The reduced vector is supported on standard monomials by
    /// construction.
    pub fn coordinates(&self, v: &ModVec<F>) -> Vec<F> {
        let nf = self.gb.normal_form(v);
        let mut coords = alloc::vec![F::zero(); self.elements.len()];
        for (pos, p) in nf.components().iter().enumerate() {
            for (mono, c) in p.terms() {
                let idx = self
                    .index
                    .get(&(pos, mono.clone()))
                    .expect("normal forms are supported on standard monomials");
                coords[*idx] = c.clone();
            }
        }
        coords
    }

    pub fn free_degrees(&self) -> &[i64] {
        &self.free_degrees
    }
}

/// Number of standard monomials in one internal degree: a brute-force
/// evaluation of the Hilbert function of the quotient.
pub fn quotient_rank_in_degree<F: Field>(
    spec: &WeightedRingSpec,
    gb: &GroebnerBasis<F>,
    free_degrees: &[i64],
    internal_degree: i64,
) -> usize {
    let mut count = 0;
    for (pos, &gen_degree) in free_degrees.iter().enumerate() {
        for mono in monomials_of_degree(spec, internal_degree - gen_degree) {
            let reducible = gb
                .leads()
                .iter()
                .any(|(lp, lm)| *lp == pos && lm.divides(&mono));
            if !reducible {
                count += 1;
            }
        }
    }
    count
}

/// Dimension of the degree-`internal_degree` strand of `Ext^i(M, N)`,
/// computed as dense cohomology of the Hom complex: explicit bases of the
/// three neighbouring terms and ranks of the two boundary matrices.
pub fn ext_strand_dimension<F: Field>(
    res: &FreeResolution<F>,
    n: &ModulePresentation<F>,
    i: usize,
    internal_degree: i64,
) -> Result<usize, GroebnerError> {
    let ring = res.ring();
    let spec = ring.spec();
    let Some(fi) = res.free_module(i) else {
        return Ok(0);
    };
    if fi.is_empty() || n.generator_degrees().is_empty() {
        return Ok(0);
    }
    let n_pres = n.presentation();
    let n_gens: Vec<ModVec<F>> = (0..n_pres.cols())
        .map(|j| ModVec::from_components(n_pres.column(j)))
        .collect();
    let n_gb = buchberger(ring, n.generator_degrees(), &n_gens, None)?;
    let n_degrees = n.generator_degrees();

    // basis of Hom(F_j, N)_n: for each generator k of F_j, standard
    // monomials of N in internal degree n + a_{jk}
    let hom_basis = |fj: &[i64]| -> Vec<(usize, usize, Monomial)> {
        let mut out = Vec::new();
        for (k, &a) in fj.iter().enumerate() {
            for (pos, &b) in n_degrees.iter().enumerate() {
                for mono in monomials_of_degree(spec, internal_degree + a - b) {
                    let reducible = n_gb
                        .leads()
                        .iter()
                        .any(|(lp, lm)| *lp == pos && lm.divides(&mono));
                    if !reducible {
                        out.push((k, pos, mono));
                    }
                }
            }
        }
        out
    };

    let basis_i = hom_basis(fi);
    let index_i: BTreeMap<(usize, usize, Monomial), usize> = basis_i
        .iter()
        .enumerate()
        .map(|(idx, e)| (e.clone(), idx))
        .collect();

    // image of a Hom basis element under the dual of a differential `d`
    // mapping into F_j: component at F_j-generator `k` is d[k0][k] * b
    let dual_rows = |d: &crate::polyring::GradedMatrix<F>,
                     domain: &[(usize, usize, Monomial)],
                     codomain_len: usize,
                     codomain_index: &BTreeMap<(usize, usize, Monomial), usize>|
     -> Vec<Vec<F>> {
        let mut rows = Vec::with_capacity(domain.len());
        for (k0, pos, mono) in domain {
            let mut row = alloc::vec![F::zero(); codomain_len];
            for k in 0..d.cols() {
                let scalar = d.entry(*k0, k);
                if scalar.is_zero() {
                    continue;
                }
                let mut elt = ModVec::zero(n_degrees.len());
                for (m2, c2) in scalar.terms() {
                    elt.add_term(*pos, m2.mul(mono), c2);
                }
                let nf = n_gb.normal_form(&elt);
                for (l, comp) in nf.components().iter().enumerate() {
                    for (m3, c3) in comp.terms() {
                        let idx = codomain_index
                            .get(&(k, l, m3.clone()))
                            .expect("normal forms land in the standard basis");
                        row[*idx] = row[*idx].add(c3);
                    }
                }
            }
            rows.push(row);
        }
        rows
    };

    // rank of the incoming map (dual of d_i)
    let rank_in = if i >= 1 {
        let d_i = res.differential(i).expect("within computed range");
        let basis_prev = hom_basis(res.free_module(i - 1).unwrap());
        let rows = dual_rows(d_i, &basis_prev, basis_i.len(), &index_i);
        matrix_rank(rows)
    } else {
        0
    };

    // rank of the outgoing map (dual of d_{i+1})
    let rank_out = match res.differential(i + 1) {
        Some(d_next) => {
            let basis_next = hom_basis(res.free_module(i + 1).unwrap());
            let index_next: BTreeMap<(usize, usize, Monomial), usize> = basis_next
                .iter()
                .enumerate()
                .map(|(idx, e)| (e.clone(), idx))
                .collect();
            // domain is basis_i, mapped through the dual of d_{i+1}
            let rows = dual_rows(d_next, &basis_i, basis_next.len(), &index_next);
            matrix_rank(rows)
        }
        None => 0,
    };

    Ok(basis_i.len() - rank_out - rank_in)
}
