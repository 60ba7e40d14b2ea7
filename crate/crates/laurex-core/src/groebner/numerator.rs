use alloc::vec::Vec;

use crate::polyring::{Monomial, WeightedRingSpec};
use crate::ratfun::LaurentPoly;

/// Numerator `q(t)` of the Hilbert series `q(t) / prod_j (1 - t^{d_j})` of
/// `F/L`, where `L` is the monomial submodule generated by the given
/// `(position, monomial)` leading terms inside the free module `F` with the
/// given generator degrees.
///
/// Monomial submodules split by position, so the numerator is a sum of
/// twisted ideal numerators; each ideal numerator is computed by a
/// pivot-variable recursion with inclusion-exclusion base cases.
pub fn monomial_hilbert_numerator(
    leads: &[(usize, Monomial)],
    spec: &WeightedRingSpec,
    generator_degrees: &[i64],
) -> LaurentPoly {
    let mut per_position: Vec<Vec<Monomial>> = alloc::vec![Vec::new(); generator_degrees.len()];
    for (pos, m) in leads {
        per_position[*pos].push(m.clone());
    }
    let mut total = LaurentPoly::zero();
    for (pos, gens) in per_position.into_iter().enumerate() {
        let q = ideal_numerator(minimalize(gens), spec.weights());
        total = total.add(&q.shift(generator_degrees[pos]));
    }
    total
}

/// Drops generators divisible by another generator.
fn minimalize(gens: Vec<Monomial>) -> Vec<Monomial> {
    let mut kept: Vec<Monomial> = Vec::new();
    let mut sorted = gens;
    sorted.sort_by_key(Monomial::total_degree);
    for g in sorted {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// Numerator of `H(Q/I)` for the monomial ideal minimally generated by
/// `gens`.
fn ideal_numerator(gens: Vec<Monomial>, weights: &[u32]) -> LaurentPoly {
    if gens.is_empty() {
        return LaurentPoly::one();
    }
    if gens.iter().any(Monomial::is_one) {
        return LaurentPoly::zero();
    }
    if gens.len() == 1 {
        let mut q = LaurentPoly::one();
        q = q.sub(&LaurentPoly::t_power(gens[0].weighted_degree(weights)));
        return q;
    }
    if pairwise_coprime(&gens) {
        let mut q = LaurentPoly::one();
        for g in &gens {
            let f = LaurentPoly::one().sub(&LaurentPoly::t_power(g.weighted_degree(weights)));
            q = q.mul(&f);
        }
        return q;
    }

    let pivot = pick_pivot(&gens, weights.len());

    // 0 -> (Q/(I : x))(-w_x) -> Q/I -> Q/(I + (x)) -> 0 splits the numerator
    let n_vars = weights.len();
    let x = Monomial::var(n_vars, pivot);

    let mut plus: Vec<Monomial> = gens
        .iter()
        .filter(|g| g.exp(pivot) == 0)
        .cloned()
        .collect();
    plus.push(x.clone());

    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            if g.exp(pivot) > 0 {
                g.try_div(&x).unwrap()
            } else {
                g.clone()
            }
        })
        .collect();

    let q_plus = ideal_numerator(minimalize(plus), weights);
    let q_colon = ideal_numerator(minimalize(colon), weights);
    q_plus.add(&q_colon.shift(i64::from(weights[pivot])))
}

fn pairwise_coprime(gens: &[Monomial]) -> bool {
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            if !gens[i].coprime(&gens[j]) {
                return false;
            }
        }
    }
    true
}

/// The variable occurring in the most generators; ties go to the lowest
/// index. Because the generators are not pairwise coprime, some variable
/// occurs at least twice, which guarantees both recursive branches shrink.
fn pick_pivot(gens: &[Monomial], n_vars: usize) -> usize {
    let mut best = 0;
    let mut best_count = 0;
    for i in 0..n_vars {
        let count = gens.iter().filter(|g| g.exp(i) > 0).count();
        if count > best_count {
            best = i;
            best_count = count;
        }
    }
    best
}
