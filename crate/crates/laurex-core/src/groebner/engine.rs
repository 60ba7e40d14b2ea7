use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::polyring::{Field, GradedMatrix, Monomial, MultiPoly, RingPresentation, WeightedRingSpec};

use super::modvec::{ModVec, VectorDegree};
use super::order::MonomialOrder;
use super::GroebnerError;

/// A Groebner basis of a homogeneous submodule of a graded free module over
/// the ambient polynomial ring, with cached leading terms. Elements are
/// monic; in the default entry points the basis is reduced, which makes it
/// canonical for the fixed order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    order: MonomialOrder,
    row_degrees: Vec<i64>,
    elements: Vec<ModVec<F>>,
    leads: Vec<(usize, Monomial)>,
    /// Degree bound the computation was truncated at, if any.
    truncation: Option<i64>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn elements(&self) -> &[ModVec<F>] {
        &self.elements
    }

    pub fn leads(&self) -> &[(usize, Monomial)] {
        &self.leads
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn row_degrees(&self) -> &[i64] {
        &self.row_degrees
    }

    pub fn truncation(&self) -> Option<i64> {
        self.truncation
    }

    pub fn rank(&self) -> usize {
        self.row_degrees.len()
    }

    /// The unique fully reduced remainder of `v` modulo the basis.
    pub fn normal_form(&self, v: &ModVec<F>) -> ModVec<F> {
        reduce_full(v, &self.elements, &self.leads, &self.order).0
    }

    /// Membership test: zero normal form.
    pub fn contains(&self, v: &ModVec<F>) -> bool {
        self.normal_form(v).is_zero()
    }
}

/// Priority key of an S-pair under the normal selection strategy: lowest
/// degree first, then the pair indices for determinism.
type PairKey = (i64, usize, usize);

struct Engine<'a, F: Field> {
    spec: &'a WeightedRingSpec,
    order: MonomialOrder,
    row_degrees: &'a [i64],
    basis: Vec<ModVec<F>>,
    leads: Vec<(usize, Monomial)>,
    degrees: Vec<i64>,
    single_position: Vec<bool>,
    queue: BinaryHeap<Reverse<PairKey>>,
    handled: BTreeSet<(usize, usize)>,
    /// Representations of basis elements in the original generators, plus
    /// the collected syzygies, when syzygy tracking is on.
    reps: Option<Vec<ModVec<F>>>,
    syzygies: Vec<ModVec<F>>,
    use_criteria: bool,
    truncation: Option<i64>,
}

impl<'a, F: Field> Engine<'a, F> {
    fn new(
        spec: &'a WeightedRingSpec,
        row_degrees: &'a [i64],
        track_syzygies: bool,
        n_orig: usize,
    ) -> Self {
        Engine {
            spec,
            order: MonomialOrder::new(spec.weights().to_vec()),
            row_degrees,
            basis: Vec::new(),
            leads: Vec::new(),
            degrees: Vec::new(),
            single_position: Vec::new(),
            queue: BinaryHeap::new(),
            handled: BTreeSet::new(),
            reps: if track_syzygies {
                Some(Vec::with_capacity(n_orig))
            } else {
                None
            },
            syzygies: Vec::new(),
            use_criteria: !track_syzygies,
            truncation: None,
        }
    }

    fn push_element(&mut self, v: ModVec<F>, rep: Option<ModVec<F>>, degree: i64) {
        let (pos, mono, coeff) = v.leading(&self.order).expect("nonzero element");
        let inv = coeff.inv().expect("field coefficient");
        let v = v.scale(&inv);
        let new_index = self.basis.len();
        for k in 0..new_index {
            if self.leads[k].0 == pos {
                let lcm = self.leads[k].1.lcm(&mono);
                let pair_degree = lcm.weighted_degree(self.spec.weights()) + self.row_degrees[pos];
                self.queue.push(Reverse((pair_degree, k, new_index)));
            }
        }
        self.single_position.push(v.single_position().is_some());
        self.basis.push(v);
        self.leads.push((pos, mono));
        self.degrees.push(degree);
        if let Some(reps) = &mut self.reps {
            reps.push(rep.expect("representation tracked").scale(&inv));
        }
    }

    fn run(&mut self, degree_bound: Option<i64>) {
        while let Some(Reverse((deg, i, j))) = self.queue.pop() {
            if let Some(bound) = degree_bound {
                if deg > bound {
                    // normal strategy pops in ascending degree, so every
                    // remaining pair also exceeds the bound
                    self.truncation = Some(bound);
                    break;
                }
            }
            let (pos, ref mi) = self.leads[i];
            let mj = &self.leads[j].1;
            debug_assert_eq!(pos, self.leads[j].0);
            let lcm = mi.lcm(mj);

            if self.use_criteria {
                // first Buchberger criterion: coprime leading monomials.
                // Sound only when both elements live in a single position,
                // because the tail-rewriting argument behind it is a ring
                // statement; vectors with terms at other positions can have
                // nonzero S-pair remainders despite coprime leads.
                if mi.coprime(mj) && self.single_position[i] && self.single_position[j] {
                    self.handled.insert((i, j));
                    continue;
                }
                // chain criterion, applied only against pairs already handled
                let mut skip = false;
                for k in 0..self.basis.len() {
                    if k == i || k == j || self.leads[k].0 != pos {
                        continue;
                    }
                    if self.leads[k].1.divides(&lcm)
                        && self.handled.contains(&key(i, k))
                        && self.handled.contains(&key(j, k))
                    {
                        skip = true;
                        break;
                    }
                }
                if skip {
                    continue;
                }
            }

            let ui = lcm.try_div(mi).expect("lcm divisible");
            let uj = lcm.try_div(mj).expect("lcm divisible");
            let one = F::one();
            let s = self.basis[i]
                .mul_term(&ui, &one)
                .sub(&self.basis[j].mul_term(&uj, &one));
            let (nf, quotients) = reduce_full(&s, &self.basis, &self.leads, &self.order);

            if let Some(reps) = &self.reps {
                let mut rep = reps[i]
                    .mul_term(&ui, &one)
                    .sub(&reps[j].mul_term(&uj, &one));
                for (k, q) in quotients.iter().enumerate() {
                    if !q.is_zero() {
                        rep = rep.sub(&reps[k].mul_poly(q));
                    }
                }
                if nf.is_zero() {
                    self.syzygies.push(rep);
                } else {
                    self.handled.insert((i, j));
                    self.push_element(nf, Some(rep), deg);
                    continue;
                }
            } else if !nf.is_zero() {
                self.handled.insert((i, j));
                self.push_element(nf, None, deg);
                continue;
            }
            self.handled.insert((i, j));
        }
    }

    /// Minimal, tail-reduced, canonically sorted basis.
    fn interreduce(&mut self) {
        let n = self.basis.len();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| {
            self.degrees[a]
                .cmp(&self.degrees[b])
                .then_with(|| {
                    self.order.cmp_module_terms(
                        (self.leads[a].0, &self.leads[a].1),
                        (self.leads[b].0, &self.leads[b].1),
                    )
                })
                .then(a.cmp(&b))
        });
        let mut kept: Vec<usize> = Vec::new();
        for &k in &idx {
            let (pos, ref m) = self.leads[k];
            let redundant = kept.iter().any(|&p| {
                self.leads[p].0 == pos && self.leads[p].1.divides(m)
            });
            if !redundant {
                kept.push(k);
            }
        }
        let kept_elements: Vec<ModVec<F>> = kept.iter().map(|&k| self.basis[k].clone()).collect();
        let kept_leads: Vec<(usize, Monomial)> =
            kept.iter().map(|&k| self.leads[k].clone()).collect();
        let kept_degrees: Vec<i64> = kept.iter().map(|&k| self.degrees[k]).collect();
        // tail-reduce each element against the whole minimal basis; leading
        // terms cannot be touched because kept leads are pairwise
        // non-divisible and tails are strictly smaller in the order
        let mut reduced = Vec::with_capacity(kept_elements.len());
        for v in &kept_elements {
            let (nf, _) = reduce_full_skipping(v, &kept_elements, &kept_leads, &self.order, v);
            reduced.push(nf);
        }
        self.basis = reduced;
        self.leads = kept_leads;
        self.degrees = kept_degrees;
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Full reduction: the remainder has no term divisible by any basis leading
/// term. Returns the remainder and the quotient polynomial applied to each
/// basis element, so that `v = sum_k quotients[k] * basis[k] + remainder`.
/// Basis elements must be monic. The reducer chosen for a term is always the
/// first applicable element in basis order, which makes reduction
/// deterministic.
fn reduce_full<F: Field>(
    v: &ModVec<F>,
    basis: &[ModVec<F>],
    leads: &[(usize, Monomial)],
    order: &MonomialOrder,
) -> (ModVec<F>, Vec<MultiPoly<F>>) {
    let mut quotients = alloc::vec![MultiPoly::zero(); basis.len()];
    let mut remainder = ModVec::zero(v.rank());
    let mut work = v.clone();
    'outer: while let Some((pos, mono, coeff)) = work.leading(order) {
        for (k, (lpos, lmono)) in leads.iter().enumerate() {
            if *lpos == pos {
                if let Some(q) = mono.try_div(lmono) {
                    work = work.sub(&basis[k].mul_term(&q, &coeff));
                    quotients[k].add_term(q, &coeff);
                    continue 'outer;
                }
            }
        }
        remainder.add_term(pos, mono.clone(), &coeff);
        work.add_term(pos, mono, &coeff.neg());
    }
    (remainder, quotients)
}

/// Variant of [`reduce_full`] that never reduces by the element equal to
/// `skip`, used during tail reduction of that element itself. Its own lead
/// cannot be reduced by any other element of a minimal basis, so it lands in
/// the remainder untouched.
fn reduce_full_skipping<F: Field>(
    v: &ModVec<F>,
    basis: &[ModVec<F>],
    leads: &[(usize, Monomial)],
    order: &MonomialOrder,
    skip: &ModVec<F>,
) -> (ModVec<F>, Vec<MultiPoly<F>>) {
    let mut quotients = alloc::vec![MultiPoly::zero(); basis.len()];
    let mut remainder = ModVec::zero(v.rank());
    let mut work = v.clone();
    'outer: while let Some((pos, mono, coeff)) = work.leading(order) {
        for (k, (lpos, lmono)) in leads.iter().enumerate() {
            if *lpos == pos && basis[k] != *skip {
                if let Some(q) = mono.try_div(lmono) {
                    work = work.sub(&basis[k].mul_term(&q, &coeff));
                    quotients[k].add_term(q, &coeff);
                    continue 'outer;
                }
            }
        }
        remainder.add_term(pos, mono.clone(), &coeff);
        work.add_term(pos, mono, &coeff.neg());
    }
    (remainder, quotients)
}

/// Appends `relation * e_k` for every ring relation and generator position,
/// turning a submodule over `R = Q/I` into one over `Q` with the same
/// quotient.
fn extend_with_relations<F: Field>(
    ring: &RingPresentation<F>,
    row_degrees: &[i64],
    gens: &[ModVec<F>],
) -> Vec<ModVec<F>> {
    let rank = row_degrees.len();
    let mut out: Vec<ModVec<F>> = gens.to_vec();
    for rel in ring.relations() {
        for pos in 0..rank {
            let mut v = ModVec::zero(rank);
            for (m, c) in rel.terms() {
                v.add_term(pos, m.clone(), c);
            }
            out.push(v);
        }
    }
    out
}

fn validate_homogeneous<F: Field>(
    spec: &WeightedRingSpec,
    row_degrees: &[i64],
    gens: &[ModVec<F>],
) -> Result<(), GroebnerError> {
    for (index, g) in gens.iter().enumerate() {
        if g.rank() != row_degrees.len() {
            return Err(GroebnerError::ShapeMismatch);
        }
        if g.degree(spec, row_degrees) == VectorDegree::Inhomogeneous {
            return Err(GroebnerError::Inhomogeneous { index });
        }
    }
    Ok(())
}

/// Reduced Groebner basis of the submodule generated by `gens` together
/// with `I * F` over the ambient ring, where `I` is generated by the ring
/// relations. Normal forms against the result compute normal forms over
/// `R = Q/I`. An optional degree bound truncates the computation; the
/// result is then correct for all degrees up to the bound.
pub fn buchberger<F: Field>(
    ring: &RingPresentation<F>,
    row_degrees: &[i64],
    gens: &[ModVec<F>],
    degree_bound: Option<i64>,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    let spec = ring.spec();
    validate_homogeneous(spec, row_degrees, gens)?;
    let extended = extend_with_relations(ring, row_degrees, gens);
    let mut engine = Engine::new(spec, row_degrees, false, extended.len());
    for g in &extended {
        if g.is_zero() {
            continue;
        }
        let VectorDegree::Homogeneous(deg) = g.degree(spec, row_degrees) else {
            unreachable!("validated nonzero generator");
        };
        engine.push_element(g.clone(), None, deg);
    }
    engine.run(degree_bound);
    engine.interreduce();
    Ok(GroebnerBasis {
        order: engine.order.clone(),
        row_degrees: row_degrees.to_vec(),
        elements: engine.basis,
        leads: engine.leads,
        truncation: engine.truncation,
    })
}

/// Groebner basis plus generators of the full syzygy module of the input
/// list (over the ambient polynomial ring). The basis is not interreduced:
/// every input generator stays a member, which is what makes the collected
/// S-pair syzygies generate all syzygies of the inputs. Zero input
/// generators contribute unit-vector syzygies.
pub fn buchberger_with_syzygies<F: Field>(
    spec: &WeightedRingSpec,
    row_degrees: &[i64],
    gens: &[ModVec<F>],
) -> Result<(GroebnerBasis<F>, Vec<ModVec<F>>), GroebnerError> {
    validate_homogeneous(spec, row_degrees, gens)?;
    let n = gens.len();
    let mut engine = Engine::new(spec, row_degrees, true, n);
    let mut pre_syzygies: Vec<ModVec<F>> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        if g.is_zero() {
            pre_syzygies.push(ModVec::unit(n, j, spec.n_vars()));
            continue;
        }
        let VectorDegree::Homogeneous(deg) = g.degree(spec, row_degrees) else {
            unreachable!("validated nonzero generator");
        };
        engine.push_element(g.clone(), Some(ModVec::unit(n, j, spec.n_vars())), deg);
    }
    engine.run(None);
    let mut syzygies = pre_syzygies;
    syzygies.append(&mut engine.syzygies);
    Ok((
        GroebnerBasis {
            order: engine.order.clone(),
            row_degrees: row_degrees.to_vec(),
            elements: engine.basis,
            leads: engine.leads,
            truncation: None,
        },
        syzygies,
    ))
}

/// Columns generating the syzygy module over `R = Q/I` of the given
/// homogeneous generators (with declared degrees `gen_degrees`) inside the
/// free module with generator degrees `row_degrees`. Columns are reduced to
/// normal form modulo the ring relations; zero columns are dropped.
pub fn syzygy_matrix<F: Field>(
    ring: &RingPresentation<F>,
    row_degrees: &[i64],
    gens: &[ModVec<F>],
    gen_degrees: &[i64],
) -> Result<GradedMatrix<F>, GroebnerError> {
    if gens.len() != gen_degrees.len() {
        return Err(GroebnerError::ShapeMismatch);
    }
    let spec = ring.spec();
    validate_homogeneous(spec, row_degrees, gens)?;
    let extended = extend_with_relations(ring, row_degrees, gens);
    let (_, raw) = buchberger_with_syzygies(spec, row_degrees, &extended)?;

    // reduce coefficients modulo the relation ideal so columns are canonical
    let ideal_gb = buchberger(ring, &[0], &[], None).expect("relation ideal basis");
    let n = gens.len();
    let mut columns: Vec<(i64, Vec<MultiPoly<F>>)> = Vec::new();
    for syz in &raw {
        let mut entries: Vec<MultiPoly<F>> = Vec::with_capacity(n);
        for j in 0..n {
            let comp = syz.component(j);
            let reduced = ideal_gb
                .normal_form(&ModVec::from_components(alloc::vec![comp.clone()]))
                .into_components()
                .pop()
                .unwrap();
            entries.push(reduced);
        }
        let v = ModVec::from_components(entries.clone());
        if v.is_zero() {
            continue;
        }
        let VectorDegree::Homogeneous(deg) = v.degree(spec, gen_degrees) else {
            unreachable!("syzygies of homogeneous inputs are homogeneous and nonzero here");
        };
        columns.push((deg, entries));
    }
    columns.sort_by_key(|a| a.0);

    let col_degrees: Vec<i64> = columns.iter().map(|(d, _)| *d).collect();
    let mut entries: Vec<MultiPoly<F>> = Vec::with_capacity(n * columns.len());
    for i in 0..n {
        for (_, col) in &columns {
            entries.push(col[i].clone());
        }
    }
    Ok(GradedMatrix::from_parts(
        gen_degrees.to_vec(),
        col_degrees,
        entries,
    ))
}
