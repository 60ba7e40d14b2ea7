//! Hilbert series of presented modules and of graded Ext, Tor, and Bass
//! number data computed from resolutions and Groebner bases.
//!
//! Ext is always computed from a free resolution of the first argument;
//! kernels and images of the dualized differentials are measured through
//! Groebner leading-term series, using `H(ker f) = H(source) - H(im f)` on
//! presented modules.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::groebner::{
    buchberger, monomial_hilbert_numerator, syzygy_matrix, GroebnerError, ModVec,
};
use crate::polyring::{Field, GradedMatrix, ModulePresentation, MultiPoly, RingPresentation};
use crate::ratfun::HilbertRational;
use crate::resolve::{minimal_resolution, FreeResolution, ResolveError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomAlgError {
    Groebner(GroebnerError),
    Resolve(ResolveError),
    /// The two modules live over different rings.
    RingMismatch,
    /// A truncated resolution does not reach step `needed`.
    ResolutionTooShort { needed: usize, have: usize },
    /// Ext against the residue field must be finite length; a non-polynomial
    /// series signals an internal fault, not a property of the input.
    NonPolynomialBassSeries { index: usize },
    /// The leading Laurent coefficient of the ring vanished, which cannot
    /// happen for a nonzero ring; guards the rank division.
    DegenerateRing,
}

impl From<GroebnerError> for HomAlgError {
    fn from(e: GroebnerError) -> Self {
        HomAlgError::Groebner(e)
    }
}

impl From<ResolveError> for HomAlgError {
    fn from(e: ResolveError) -> Self {
        HomAlgError::Resolve(e)
    }
}

impl fmt::Display for HomAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomAlgError::Groebner(e) => write!(f, "{e}"),
            HomAlgError::Resolve(e) => write!(f, "{e}"),
            HomAlgError::RingMismatch => write!(f, "modules live over different rings"),
            HomAlgError::ResolutionTooShort { needed, have } => {
                write!(f, "resolution truncated at step {have}, step {needed} required")
            }
            HomAlgError::NonPolynomialBassSeries { index } => write!(
                f,
                "internal fault: Ext^{index} against the residue field is not finite length"
            ),
            HomAlgError::DegenerateRing => {
                write!(f, "ring has vanishing leading Laurent coefficient")
            }
        }
    }
}

/// Hilbert series of the quotient of the free module with the given
/// generator degrees by the submodule generated by `gens` (plus the ring
/// relations), measured through the leading-term module.
pub fn quotient_series<F: Field>(
    ring: &RingPresentation<F>,
    free_degrees: &[i64],
    gens: &[ModVec<F>],
) -> Result<HilbertRational, HomAlgError> {
    if free_degrees.is_empty() {
        return Ok(HilbertRational::zero());
    }
    let gb = buchberger(ring, free_degrees, gens, None)?;
    let q = monomial_hilbert_numerator(gb.leads(), ring.spec(), free_degrees);
    Ok(HilbertRational::new(
        q,
        ring.spec().weights().iter().copied(),
    ))
}

/// Exact Hilbert series of a presented module.
pub fn module_hilbert<F: Field>(
    m: &ModulePresentation<F>,
) -> Result<HilbertRational, HomAlgError> {
    let pres = m.presentation();
    let gens: Vec<ModVec<F>> = (0..pres.cols())
        .map(|j| ModVec::from_components(pres.column(j)))
        .collect();
    quotient_series(m.ring(), pres.row_degrees(), &gens)
}

/// Hilbert series of the ring itself.
pub fn ring_hilbert<F: Field>(ring: &RingPresentation<F>) -> Result<HilbertRational, HomAlgError> {
    module_hilbert(&ModulePresentation::ring_module(ring.clone()))
}

/// Hilbert series of graded Ext modules `Ext^i(M, N)` for `i` up to a
/// bound, together with a certificate when the vanishing of all higher Ext
/// is proved by the termination of the minimal resolution of `M`.
#[derive(Clone, Debug)]
pub struct ExtSeriesTable {
    entries: Vec<HilbertRational>,
    vanishing_certified: bool,
}

impl ExtSeriesTable {
    pub fn computed_through(&self) -> usize {
        self.entries.len() - 1
    }

    /// True when the minimal resolution terminated, so `Ext^i = 0` for
    /// every `i` beyond the table.
    pub fn vanishing_certified(&self) -> bool {
        self.vanishing_certified
    }

    pub fn entries(&self) -> &[HilbertRational] {
        &self.entries
    }

    /// Series at index `i`; indices beyond the table are exact zeros when
    /// vanishing is certified and unknown (`None`) otherwise.
    pub fn series_at(&self, i: usize) -> Option<HilbertRational> {
        if i < self.entries.len() {
            Some(self.entries[i].clone())
        } else if self.vanishing_certified {
            Some(HilbertRational::zero())
        } else {
            None
        }
    }

    /// `sum_i (-1)^i H(Ext^i)` over the stored entries.
    pub fn alternating_sum(&self) -> HilbertRational {
        let mut acc = HilbertRational::zero();
        for (i, h) in self.entries.iter().enumerate() {
            acc = if i % 2 == 0 { acc.add(h) } else { acc.sub(h) };
        }
        acc
    }
}

/// Free cover of `Hom(F_i, N)` (`dual = true`) or `F_i (x) N` (`dual =
/// false`): one block of `N`-generators per generator of `F_i`, with the
/// relations of `N` copied into every block.
struct InducedModule<F: Field> {
    degrees: Vec<i64>,
    relations: Vec<ModVec<F>>,
    relation_degrees: Vec<i64>,
    blocks: usize,
    g0: usize,
}

fn induced_module<F: Field>(
    fi: &[i64],
    n: &ModulePresentation<F>,
    dual: bool,
) -> InducedModule<F> {
    let g0 = n.generator_degrees();
    let pres = n.presentation();
    let mut degrees = Vec::with_capacity(fi.len() * g0.len());
    for &a in fi {
        for &b in g0 {
            degrees.push(if dual { b - a } else { b + a });
        }
    }
    let rank = degrees.len();
    let mut relations = Vec::new();
    let mut relation_degrees = Vec::new();
    for (k, &a) in fi.iter().enumerate() {
        for j in 0..pres.cols() {
            let col = pres.column(j);
            let mut v = ModVec::zero(rank);
            for (l, entry) in col.into_iter().enumerate() {
                if !entry.is_zero() {
                    v = replace_component(v, k * g0.len() + l, entry);
                }
            }
            relations.push(v);
            let c = pres.col_degrees()[j];
            relation_degrees.push(if dual { c - a } else { c + a });
        }
    }
    InducedModule {
        degrees,
        relations,
        relation_degrees,
        blocks: fi.len(),
        g0: g0.len(),
    }
}

fn replace_component<F: Field>(v: ModVec<F>, idx: usize, p: MultiPoly<F>) -> ModVec<F> {
    let mut comps = v.into_components();
    comps[idx] = p;
    ModVec::from_components(comps)
}

/// Images of the domain generators under the map induced by the
/// differential `d`. For the dual (Hom) map, the domain generator `(k, l)`
/// hits `(k1, l)` with coefficient `d[k][k1]`; for the tensor map, the
/// domain generator `(k1, l)` hits `(k, l)` with coefficient `d[k][k1]`.
fn induced_images<F: Field>(
    d: &GradedMatrix<F>,
    domain: &InducedModule<F>,
    codomain: &InducedModule<F>,
    dual: bool,
) -> Vec<ModVec<F>> {
    let mut out = Vec::with_capacity(domain.degrees.len());
    for k in 0..domain.blocks {
        for l in 0..domain.g0 {
            let mut v = ModVec::zero(codomain.degrees.len());
            for k1 in 0..codomain.blocks {
                let entry = if dual { d.entry(k, k1) } else { d.entry(k1, k) };
                if !entry.is_zero() {
                    let idx = k1 * codomain.g0 + l;
                    let c = v.component(idx).add(entry);
                    v = replace_component(v, idx, c);
                }
            }
            out.push(v);
        }
    }
    out
}

/// Generators of the preimage of the codomain relation submodule under the
/// induced map: syzygies of the generator images together with the codomain
/// relations, projected to the image coordinates.
fn preimage_gens<F: Field>(
    ring: &RingPresentation<F>,
    images: &[ModVec<F>],
    domain: &InducedModule<F>,
    codomain: &InducedModule<F>,
) -> Result<Vec<ModVec<F>>, HomAlgError> {
    let mut targets: Vec<ModVec<F>> = images.to_vec();
    targets.extend(codomain.relations.iter().cloned());
    let mut target_degs: Vec<i64> = domain.degrees.clone();
    target_degs.extend_from_slice(&codomain.relation_degrees);
    let syz = syzygy_matrix(ring, &codomain.degrees, &targets, &target_degs)?;
    let h = domain.degrees.len();
    let mut out = Vec::with_capacity(syz.cols());
    for j in 0..syz.cols() {
        let col = syz.column(j);
        let v = ModVec::from_components(col[..h].to_vec());
        if !v.is_zero() {
            out.push(v);
        }
    }
    Ok(out)
}

/// Ext table computed from an already-built resolution of `M`. The
/// resolution must reach step `max_i + 1` unless it terminated earlier.
pub fn ext_table_from_resolution<F: Field>(
    res: &FreeResolution<F>,
    n: &ModulePresentation<F>,
    max_i: usize,
) -> Result<ExtSeriesTable, HomAlgError> {
    if res.ring() != n.ring() {
        return Err(HomAlgError::RingMismatch);
    }
    if res.is_truncated() && res.len() < max_i + 1 {
        return Err(HomAlgError::ResolutionTooShort {
            needed: max_i + 1,
            have: res.len(),
        });
    }
    let ring = res.ring();
    let mut entries = Vec::with_capacity(max_i + 1);
    for i in 0..=max_i {
        entries.push(ext_entry(ring, res, n, i)?);
    }
    Ok(ExtSeriesTable {
        entries,
        vanishing_certified: !res.is_truncated(),
    })
}

fn ext_entry<F: Field>(
    ring: &RingPresentation<F>,
    res: &FreeResolution<F>,
    n: &ModulePresentation<F>,
    i: usize,
) -> Result<HilbertRational, HomAlgError> {
    let Some(fi) = res.free_module(i) else {
        return Ok(HilbertRational::zero());
    };
    if fi.is_empty() || n.generator_degrees().is_empty() {
        return Ok(HilbertRational::zero());
    }
    let hom_i = induced_module(fi, n, true);

    // H(H_i / (im psi + U_i)), psi the dual of d_i
    let mut image_side: Vec<ModVec<F>> = Vec::new();
    if i >= 1 {
        let d_i = res.differential(i).expect("step below the computed length");
        let hom_prev = induced_module(res.free_module(i - 1).unwrap(), n, true);
        image_side.extend(induced_images(d_i, &hom_prev, &hom_i, true));
    }
    image_side.extend(hom_i.relations.iter().cloned());
    let first = quotient_series(ring, &hom_i.degrees, &image_side)?;

    // H(H_i / (V + U_i)), V the preimage of U_{i+1} under the dual of
    // d_{i+1}; when the resolution has terminated the kernel is everything
    let second = match res.differential(i + 1) {
        Some(d_next) => {
            let hom_next = induced_module(res.free_module(i + 1).unwrap(), n, true);
            let images = induced_images(d_next, &hom_i, &hom_next, true);
            let mut v_gens = preimage_gens(ring, &images, &hom_i, &hom_next)?;
            v_gens.extend(hom_i.relations.iter().cloned());
            quotient_series(ring, &hom_i.degrees, &v_gens)?
        }
        None => HilbertRational::zero(),
    };
    Ok(first.sub(&second).reduce())
}

/// Hilbert series table of `Ext^i(M, N)` for `i = 0..=max_i`.
pub fn ext_table<F: Field>(
    m: &ModulePresentation<F>,
    n: &ModulePresentation<F>,
    max_i: usize,
) -> Result<ExtSeriesTable, HomAlgError> {
    if m.ring() != n.ring() {
        return Err(HomAlgError::RingMismatch);
    }
    let res = minimal_resolution(m, max_i + 1)?;
    ext_table_from_resolution(&res, n, max_i)
}

/// Hilbert series of a single graded Ext module.
pub fn ext_hilbert<F: Field>(
    m: &ModulePresentation<F>,
    n: &ModulePresentation<F>,
    i: usize,
) -> Result<HilbertRational, HomAlgError> {
    Ok(ext_table(m, n, i)?.entries[i].clone())
}

/// Tor table computed from an already-built resolution of `M`.
pub fn tor_table_from_resolution<F: Field>(
    res: &FreeResolution<F>,
    n: &ModulePresentation<F>,
    max_i: usize,
) -> Result<Vec<HilbertRational>, HomAlgError> {
    if res.ring() != n.ring() {
        return Err(HomAlgError::RingMismatch);
    }
    if res.is_truncated() && res.len() < max_i + 1 {
        return Err(HomAlgError::ResolutionTooShort {
            needed: max_i + 1,
            have: res.len(),
        });
    }
    let ring = res.ring();
    (0..=max_i).map(|i| tor_entry(ring, res, n, i)).collect()
}

fn tor_entry<F: Field>(
    ring: &RingPresentation<F>,
    res: &FreeResolution<F>,
    n: &ModulePresentation<F>,
    i: usize,
) -> Result<HilbertRational, HomAlgError> {
    let Some(fi) = res.free_module(i) else {
        return Ok(HilbertRational::zero());
    };
    if fi.is_empty() || n.generator_degrees().is_empty() {
        return Ok(HilbertRational::zero());
    }
    let tensor_i = induced_module(fi, n, false);

    // H(T_i / (im (d_{i+1} (x) N) + U_i))
    let mut image_side: Vec<ModVec<F>> = Vec::new();
    if let Some(d_next) = res.differential(i + 1) {
        let tensor_next = induced_module(res.free_module(i + 1).unwrap(), n, false);
        image_side.extend(induced_images(d_next, &tensor_next, &tensor_i, false));
    }
    image_side.extend(tensor_i.relations.iter().cloned());
    let first = quotient_series(ring, &tensor_i.degrees, &image_side)?;

    // H(T_i / (W + U_i)), W the preimage of U_{i-1} under d_i (x) N
    let second = if i == 0 {
        HilbertRational::zero()
    } else {
        let d_i = res.differential(i).expect("step below the computed length");
        let tensor_prev = induced_module(res.free_module(i - 1).unwrap(), n, false);
        let images = induced_images(d_i, &tensor_i, &tensor_prev, false);
        let mut w_gens = preimage_gens(ring, &images, &tensor_i, &tensor_prev)?;
        w_gens.extend(tensor_i.relations.iter().cloned());
        quotient_series(ring, &tensor_i.degrees, &w_gens)?
    };
    Ok(first.sub(&second).reduce())
}

/// Hilbert series of `Tor_i(M, N)`.
pub fn tor_hilbert<F: Field>(
    m: &ModulePresentation<F>,
    n: &ModulePresentation<F>,
    i: usize,
) -> Result<HilbertRational, HomAlgError> {
    if m.ring() != n.ring() {
        return Err(HomAlgError::RingMismatch);
    }
    let res = minimal_resolution(m, i + 1)?;
    Ok(tor_table_from_resolution(&res, n, i)?.pop().unwrap())
}

/// Bass numbers at the irrelevant maximal ideal: total ranks of
/// `Ext^i(K, N)` for the residue field `K`. Each such Ext is finite length,
/// so its Hilbert series must be a Laurent polynomial; anything else is an
/// internal fault.
pub fn bass_numbers<F: Field>(
    n: &ModulePresentation<F>,
    max_i: usize,
) -> Result<Vec<(usize, BigInt)>, HomAlgError> {
    let k = ModulePresentation::residue_field(n.ring().clone());
    let table = ext_table(&k, n, max_i)?;
    let mut out = Vec::with_capacity(max_i + 1);
    for (i, h) in table.entries().iter().enumerate() {
        let poly = h
            .as_laurent_polynomial()
            .ok_or(HomAlgError::NonPolynomialBassSeries { index: i })?;
        let total = poly.eval_one();
        debug_assert!(total.is_integer() && !total.is_negative());
        out.push((i, total.to_integer()));
    }
    Ok(out)
}

/// `rank M = f^0(M) / f^0(R)` over a ring asserted (not verified) to be a
/// domain; leading Laurent coefficients are taken at the ring dimension.
pub fn rank_over_domain<F: Field>(
    m: &ModulePresentation<F>,
) -> Result<BigRational, HomAlgError> {
    let h_ring = ring_hilbert(m.ring())?;
    let d = -h_ring.order_at_one().ok_or(HomAlgError::DegenerateRing)?;
    let f0_ring = h_ring.coefficient_at_one(d, 0);
    if num_traits::Zero::is_zero(&f0_ring) {
        return Err(HomAlgError::DegenerateRing);
    }
    let f0_m = module_hilbert(m)?.coefficient_at_one(d, 0);
    Ok(f0_m / f0_ring)
}
