//! Graded free resolutions: iterated syzygies with minimalization, and the
//! 2-periodic resolutions furnished by matrix factorizations over
//! hypersurface rings.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::groebner::{buchberger, syzygy_matrix, GroebnerBasis, GroebnerError, ModVec};
use crate::polyring::{
    Field, GradedMatrix, ModulePresentation, MultiPoly, RingPresentation,
};
use crate::ratfun::HilbertRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolveError {
    Groebner(GroebnerError),
    /// The pair does not satisfy `A.B = B.A = f.Id` over the ambient ring,
    /// or its shapes are unusable.
    InvalidFactorization,
    /// The module is not presented by the first matrix of the pair.
    PresentationMismatch,
}

impl From<GroebnerError> for ResolveError {
    fn from(e: GroebnerError) -> Self {
        ResolveError::Groebner(e)
    }
}

impl fmt::Display for ResolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolveError::Groebner(e) => write!(f, "{e}"),
            ResolveError::InvalidFactorization => {
                write!(f, "matrices do not form a matrix factorization of the hypersurface")
            }
            ResolveError::PresentationMismatch => {
                write!(f, "module is not presented by the first matrix of the factorization")
            }
        }
    }
}

/// A chain `F_L -> ... -> F_1 -> F_0` of graded free modules with
/// composition-zero differentials over the ring; `differentials()[i]` is
/// `d_{i+1}: F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    ring: RingPresentation<F>,
    modules: Vec<Vec<i64>>,
    diffs: Vec<GradedMatrix<F>>,
    minimal: bool,
    truncated: bool,
}

impl<F: Field> FreeResolution<F> {
    pub fn ring(&self) -> &RingPresentation<F> {
        &self.ring
    }

    /// Number of computed differentials (the homological length reached).
    pub fn len(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diffs.is_empty()
    }

    /// Generator degrees of `F_i`; `None` beyond the computed range. For a
    /// complete resolution every later module is zero.
    pub fn free_module(&self, i: usize) -> Option<&[i64]> {
        self.modules.get(i).map(Vec::as_slice)
    }

    pub fn modules(&self) -> &[Vec<i64>] {
        &self.modules
    }

    pub fn differentials(&self) -> &[GradedMatrix<F>] {
        &self.diffs
    }

    /// `d_i` for `i >= 1`.
    pub fn differential(&self, i: usize) -> Option<&GradedMatrix<F>> {
        if i == 0 {
            None
        } else {
            self.diffs.get(i - 1)
        }
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Betti numbers: the number of generators of each computed `F_i`.
    pub fn betti_numbers(&self) -> Vec<usize> {
        self.modules.iter().map(Vec::len).collect()
    }

    /// `sum_i (-1)^i H(F_i)`; equals the Hilbert series of the resolved
    /// module when the resolution is complete. The free modules are free
    /// over the ring, so each contributes `t^a H_R`, not an ambient
    /// polynomial-ring series.
    pub fn euler_characteristic(&self) -> HilbertRational {
        let spec = self.ring.spec();
        let gb = buchberger(&self.ring, &[0], &[], None).expect("relation ideal basis");
        let q = crate::groebner::monomial_hilbert_numerator(gb.leads(), spec, &[0]);
        let h_ring = HilbertRational::new(q, spec.weights().iter().copied());
        let mut twists = crate::ratfun::LaurentPoly::zero();
        for (i, degs) in self.modules.iter().enumerate() {
            let sign = if i % 2 == 0 {
                crate::ratfun::rat(1)
            } else {
                crate::ratfun::rat(-1)
            };
            for &a in degs {
                twists.add_term(a, &sign);
            }
        }
        h_ring.mul(&HilbertRational::from_laurent(twists))
    }

    /// Checks `d_i o d_{i+1} = 0` over the ring and, when the resolution
    /// claims minimality, the absence of unit entries.
    pub fn verify(&self) -> bool {
        let ideal_gb = match buchberger(&self.ring, &[0], &[], None) {
            Ok(gb) => gb,
            Err(_) => return false,
        };
        for w in self.diffs.windows(2) {
            let composite = match w[0].compose(&w[1]) {
                Ok(c) => c,
                Err(_) => return false,
            };
            for i in 0..composite.rows() {
                for j in 0..composite.cols() {
                    let entry = composite.entry(i, j).clone();
                    if !ideal_gb.contains(&ModVec::from_components(alloc::vec![entry])) {
                        return false;
                    }
                }
            }
        }
        if self.minimal && self.diffs.iter().any(|d| !d.is_minimal()) {
            return false;
        }
        true
    }

    /// Twists per step in the display convention `F_2 = R(-2)^2`.
    pub fn render_twists(&self) -> String {
        let mut out = String::new();
        for (i, degs) in self.modules.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&alloc::format!("F_{i} = "));
            out.push_str(&render_free_module(degs));
        }
        out
    }
}

fn render_free_module(degs: &[i64]) -> String {
    if degs.is_empty() {
        return String::from("0");
    }
    let mut sorted = degs.to_vec();
    sorted.sort_unstable();
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < sorted.len() {
        let d = sorted[k];
        let mut count = 0;
        while k < sorted.len() && sorted[k] == d {
            count += 1;
            k += 1;
        }
        let base = if d == 0 {
            String::from("R")
        } else {
            alloc::format!("R({})", -d)
        };
        if count == 1 {
            parts.push(base);
        } else {
            parts.push(alloc::format!("{base}^{count}"));
        }
    }
    parts.join(" + ")
}

/// A homogeneous matrix factorization `A.B = B.A = f.Id` over the ambient
/// polynomial ring of a hypersurface `R = Q/(f)`.
#[derive(Clone, Debug)]
pub struct MatrixFactorizationPair<F: Field> {
    pub a: GradedMatrix<F>,
    pub b: GradedMatrix<F>,
    pub f: MultiPoly<F>,
}

impl<F: Field> MatrixFactorizationPair<F> {
    /// Checks squareness and both products against `f . Id` exactly (no
    /// reduction modulo relations).
    pub fn validate(&self) -> Result<(), ResolveError> {
        let n = self.a.rows();
        if self.a.cols() != n || self.b.rows() != n || self.b.cols() != n {
            return Err(ResolveError::InvalidFactorization);
        }
        for (first, second) in [(&self.a, &self.b), (&self.b, &self.a)] {
            for i in 0..n {
                for j in 0..n {
                    let mut acc = MultiPoly::zero();
                    for k in 0..n {
                        acc = acc.add(&first.entry(i, k).mul(second.entry(k, j)));
                    }
                    let expected = if i == j { self.f.clone() } else { MultiPoly::zero() };
                    if acc != expected {
                        return Err(ResolveError::InvalidFactorization);
                    }
                }
            }
        }
        Ok(())
    }
}

fn reduce_matrix<F: Field>(m: &GradedMatrix<F>, ideal_gb: &GroebnerBasis<F>) -> GradedMatrix<F> {
    m.map_entries(|e| {
        ideal_gb
            .normal_form(&ModVec::from_components(alloc::vec![e.clone()]))
            .into_components()
            .pop()
            .unwrap()
    })
}

fn delete_column<F: Field>(m: &GradedMatrix<F>, col: usize) -> GradedMatrix<F> {
    let col_degrees: Vec<i64> = m
        .col_degrees()
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != col)
        .map(|(_, d)| *d)
        .collect();
    let mut entries = Vec::with_capacity(m.rows() * col_degrees.len());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if j != col {
                entries.push(m.entry(i, j).clone());
            }
        }
    }
    GradedMatrix::from_parts(m.row_degrees().to_vec(), col_degrees, entries)
}

fn delete_row<F: Field>(m: &GradedMatrix<F>, row: usize) -> GradedMatrix<F> {
    let row_degrees: Vec<i64> = m
        .row_degrees()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, d)| *d)
        .collect();
    let mut entries = Vec::with_capacity(row_degrees.len() * m.cols());
    for i in 0..m.rows() {
        if i == row {
            continue;
        }
        for j in 0..m.cols() {
            entries.push(m.entry(i, j).clone());
        }
    }
    GradedMatrix::from_parts(row_degrees, m.col_degrees().to_vec(), entries)
}

/// Splits off the rank-one acyclic summand pinned by the unit at `(r, s)`:
/// corrects the remaining entries against row `r` and column `s`, then
/// deletes both.
fn eliminate_unit<F: Field>(
    m: &GradedMatrix<F>,
    r: usize,
    s: usize,
    ideal_gb: &GroebnerBasis<F>,
) -> GradedMatrix<F> {
    let u = m
        .entry(r, s)
        .as_constant()
        .expect("pivot entry is a unit")
        .clone();
    let u_inv = u.inv().expect("nonzero field element");
    let row_degrees: Vec<i64> = m
        .row_degrees()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, d)| *d)
        .collect();
    let col_degrees: Vec<i64> = m
        .col_degrees()
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != s)
        .map(|(_, d)| *d)
        .collect();
    let mut entries = Vec::with_capacity(row_degrees.len() * col_degrees.len());
    for i in 0..m.rows() {
        if i == r {
            continue;
        }
        for j in 0..m.cols() {
            if j == s {
                continue;
            }
            let correction = m.entry(i, s).mul(m.entry(r, j)).scale(&u_inv).neg();
            let e = m.entry(i, j).add(&correction);
            let reduced = ideal_gb
                .normal_form(&ModVec::from_components(alloc::vec![e]))
                .into_components()
                .pop()
                .unwrap();
            entries.push(reduced);
        }
    }
    GradedMatrix::from_parts(row_degrees, col_degrees, entries)
}

fn drop_zero_columns<F: Field>(m: &GradedMatrix<F>) -> GradedMatrix<F> {
    let keep: Vec<usize> = (0..m.cols())
        .filter(|&j| (0..m.rows()).any(|i| !m.entry(i, j).is_zero()))
        .collect();
    if keep.len() == m.cols() {
        return m.clone();
    }
    select_columns(m, &keep)
}

fn select_columns<F: Field>(m: &GradedMatrix<F>, keep: &[usize]) -> GradedMatrix<F> {
    let col_degrees: Vec<i64> = keep.iter().map(|&j| m.col_degrees()[j]).collect();
    let mut entries = Vec::with_capacity(m.rows() * keep.len());
    for i in 0..m.rows() {
        for &j in keep {
            entries.push(m.entry(i, j).clone());
        }
    }
    GradedMatrix::from_parts(m.row_degrees().to_vec(), col_degrees, entries)
}

/// Prunes the columns of `m` to a minimal generating set of the submodule
/// they generate over the ring: candidates are taken in ascending degree
/// and kept exactly when they are not members of the submodule generated by
/// the columns already kept. Kept columns come out sorted by degree.
fn minimal_generator_columns<F: Field>(
    ring: &RingPresentation<F>,
    m: &GradedMatrix<F>,
) -> Result<GradedMatrix<F>, ResolveError> {
    let mut order: Vec<usize> = (0..m.cols()).collect();
    order.sort_by_key(|&j| (m.col_degrees()[j], j));
    let mut kept: Vec<usize> = Vec::new();
    for &j in &order {
        let candidate = ModVec::from_components(m.column(j));
        if candidate.is_zero() {
            continue;
        }
        let kept_gens: Vec<ModVec<F>> = kept
            .iter()
            .map(|&k| ModVec::from_components(m.column(k)))
            .collect();
        let gb = buchberger(ring, m.row_degrees(), &kept_gens, None)?;
        if !gb.contains(&candidate) {
            kept.push(j);
        }
    }
    Ok(select_columns(m, &kept))
}

/// Minimal graded free resolution of `M` out to homological degree
/// `max_step`; flagged truncated unless the syzygies run out earlier.
pub fn minimal_resolution<F: Field>(
    m: &ModulePresentation<F>,
    max_step: usize,
) -> Result<FreeResolution<F>, ResolveError> {
    let ring = m.ring().clone();
    let ideal_gb = buchberger(&ring, &[0], &[], None)?;

    // minimalize the presentation: unit entries merge generators of F_0,
    // then redundant relations are pruned away
    let mut d1 = drop_zero_columns(&reduce_matrix(m.presentation(), &ideal_gb));
    while let Some((r, s)) = d1.find_unit_entry() {
        d1 = drop_zero_columns(&eliminate_unit(&d1, r, s, &ideal_gb));
    }
    d1 = minimal_generator_columns(&ring, &d1)?;

    let mut modules: Vec<Vec<i64>> = alloc::vec![d1.row_degrees().to_vec()];
    let mut diffs: Vec<GradedMatrix<F>> = Vec::new();
    if d1.cols() > 0 {
        modules.push(d1.col_degrees().to_vec());
        diffs.push(d1);
    } else {
        // free module: complete with no differentials
        return Ok(FreeResolution {
            ring,
            modules,
            diffs,
            minimal: true,
            truncated: false,
        });
    }

    let mut truncated = true;
    while diffs.len() < max_step {
        let prev = diffs.last().unwrap();
        let gens: Vec<ModVec<F>> = (0..prev.cols())
            .map(|j| ModVec::from_components(prev.column(j)))
            .collect();
        let raw = syzygy_matrix(&ring, prev.row_degrees(), &gens, prev.col_degrees())?;
        // per-step minimalization: because the columns of the previous
        // differential generate its image minimally, the pruned syzygy
        // generators can carry no unit entries
        let syz = minimal_generator_columns(&ring, &raw)?;
        debug_assert!(syz.is_minimal());
        if syz.cols() == 0 {
            truncated = false;
            break;
        }
        modules.push(syz.col_degrees().to_vec());
        diffs.push(syz);
    }

    Ok(FreeResolution {
        ring,
        modules,
        diffs,
        minimal: true,
        truncated,
    })
}

/// Homotopy-equivalent resolution with every unit entry split off. Already
/// minimal input is returned unchanged.
pub fn minimalize<F: Field>(res: &FreeResolution<F>) -> Result<FreeResolution<F>, ResolveError> {
    let ideal_gb = buchberger(&res.ring, &[0], &[], None)?;
    let mut modules = res.modules.clone();
    let mut diffs = res.diffs.clone();
    loop {
        let mut pivot: Option<(usize, usize, usize)> = None;
        for (i, d) in diffs.iter().enumerate() {
            if let Some((r, s)) = d.find_unit_entry() {
                pivot = Some((i, r, s));
                break;
            }
        }
        let Some((i, r, s)) = pivot else { break };
        diffs[i] = eliminate_unit(&diffs[i], r, s, &ideal_gb);
        if i > 0 {
            diffs[i - 1] = delete_column(&diffs[i - 1], r);
        }
        if i + 1 < diffs.len() {
            diffs[i + 1] = delete_row(&diffs[i + 1], s);
        }
        modules[i].remove(r);
        modules[i + 1].remove(s);
    }
    // a zero column of the final differential is a generator mapping to
    // zero: it adds nothing to the image, and in a minimal resolution it
    // would be split off by a unit one step beyond the truncation
    if let Some(last) = diffs.last() {
        let trimmed = drop_zero_columns(last);
        *modules.last_mut().unwrap() = trimmed.col_degrees().to_vec();
        *diffs.last_mut().unwrap() = trimmed;
    }
    // a trailing differential may have lost all its columns
    while diffs.last().is_some_and(|d| d.cols() == 0) {
        diffs.pop();
        modules.pop();
    }
    Ok(FreeResolution {
        ring: res.ring.clone(),
        modules,
        diffs,
        minimal: true,
        truncated: res.truncated,
    })
}

/// The 2-periodic resolution of `m0 = coker(pair.a)` over the hypersurface
/// `Q/(f)`: differentials alternate between `A` and `B`, twisting by
/// `deg f` every period. `periods = 0` returns the augmentation alone.
pub fn mf_resolution<F: Field>(
    pair: &MatrixFactorizationPair<F>,
    m0: &ModulePresentation<F>,
    periods: usize,
) -> Result<FreeResolution<F>, ResolveError> {
    pair.validate()?;
    let ring = m0.ring().clone();
    let spec = ring.spec();
    let deg_f = pair
        .f
        .homogeneous_degree(spec)
        .ok_or(ResolveError::InvalidFactorization)?;
    if ring.relations() != core::slice::from_ref(&pair.f) {
        return Err(ResolveError::InvalidFactorization);
    }

    let ideal_gb = buchberger(&ring, &[0], &[], None)?;
    let pres = reduce_matrix(m0.presentation(), &ideal_gb);
    let a_reduced = reduce_matrix(&pair.a, &ideal_gb);
    if pres != a_reduced {
        return Err(ResolveError::PresentationMismatch);
    }

    let rho = pair.a.row_degrees().to_vec();
    let gamma = pair.a.col_degrees().to_vec();
    let mut modules = alloc::vec![rho.clone()];
    let mut diffs: Vec<GradedMatrix<F>> = Vec::new();
    for step in 0..(2 * periods) {
        let period = (step / 2) as i64;
        let (base, from, to) = if step % 2 == 0 {
            (&pair.a, &gamma, &rho)
        } else {
            (&pair.b, &rho, &gamma)
        };
        // the source of B twists one full period later than its target
        let (from_shift, to_shift) = if step % 2 == 0 {
            (period * deg_f, period * deg_f)
        } else {
            ((period + 1) * deg_f, period * deg_f)
        };
        let row_degrees: Vec<i64> = to.iter().map(|d| d + to_shift).collect();
        let col_degrees: Vec<i64> = from.iter().map(|d| d + from_shift).collect();
        let mut entries: Vec<MultiPoly<F>> = Vec::with_capacity(base.rows() * base.cols());
        for i in 0..base.rows() {
            for j in 0..base.cols() {
                entries.push(base.entry(i, j).clone());
            }
        }
        let d = GradedMatrix::from_parts(row_degrees, col_degrees, entries);
        modules.push(d.col_degrees().to_vec());
        diffs.push(reduce_matrix(&d, &ideal_gb));
    }

    let minimal = diffs.iter().all(GradedMatrix::is_minimal);
    Ok(FreeResolution {
        ring,
        modules,
        diffs,
        minimal,
        truncated: true,
    })
}
