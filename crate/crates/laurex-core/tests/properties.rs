//! Randomized properties of the exact arithmetic layers.

use laurex_core::groebner::{buchberger, ModVec};
use laurex_core::polyring::{
    weighted_degree, Field, Homogeneity, Monomial, MultiPoly, RingPresentation, WeightedRingSpec,
};
use laurex_core::ratfun::{rat, Center, HilbertRational, LaurentPoly};
use num_rational::BigRational;
use proptest::prelude::*;

type Q = BigRational;

fn laurent_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-4i64..6), (-5i64..6)), 0..5)
        .prop_map(|terms| LaurentPoly::from_int_terms(terms))
}

fn nonzero_laurent_poly() -> impl Strategy<Value = LaurentPoly> {
    laurent_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn hilbert_rational() -> impl Strategy<Value = HilbertRational> {
    (laurent_poly(), prop::collection::vec(1u32..4, 0..4))
        .prop_map(|(num, shape)| HilbertRational::new(num, shape))
}

fn nonzero_hilbert_rational() -> impl Strategy<Value = HilbertRational> {
    (nonzero_laurent_poly(), prop::collection::vec(1u32..4, 0..4))
        .prop_map(|(num, shape)| HilbertRational::new(num, shape))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_of_product_is_product_of_expansions(
        f in nonzero_hilbert_rational(),
        g in nonzero_hilbert_rational(),
    ) {
        for center in [Center::Zero, Center::One, Center::Infinity] {
            let ef = f.expand(center, 12);
            let eg = g.expand(center, 12);
            let direct = f.mul(&g).expand(center, 12);
            let truncated = ef.mul(&eg);
            let upto = truncated.known_through().unwrap() - 1;
            prop_assert!(direct.agrees_through(&truncated, upto));
        }
    }

    #[test]
    fn inverted_variable_mirrors_infinity(f in hilbert_rational()) {
        let at_infinity = f.expand(Center::Infinity, 10);
        let mirrored = f.invert_variable().expand(Center::Zero, 10);
        prop_assert_eq!(at_infinity.order(), mirrored.order());
        prop_assert_eq!(at_infinity.coefficients(), mirrored.coefficients());
    }

    #[test]
    fn re_expansion_is_deterministic(f in hilbert_rational()) {
        for center in [Center::Zero, Center::One, Center::Infinity] {
            prop_assert_eq!(f.expand(center, 9), f.expand(center, 9));
        }
    }

    #[test]
    fn equality_agrees_with_expansions_at_zero(
        f in nonzero_hilbert_rational(),
        g in nonzero_hilbert_rational(),
    ) {
        if f.equal(&g) {
            let ef = f.expand(Center::Zero, 16);
            let eg = g.expand(Center::Zero, 16);
            prop_assert_eq!(ef, eg);
        } else {
            // the difference is a nonzero rational function, so its true
            // order pins an index where the two expansions must differ
            let diff = f.sub(&g);
            prop_assert!(!diff.is_zero());
            let witness = diff.expand(Center::Zero, 1).order().unwrap();
            let ef = f.expand(Center::Zero, 1);
            let of = ef.order().unwrap_or(witness);
            let window = ((witness - of).max(0) + 1) as usize;
            let cf = f.expand(Center::Zero, window.max(1)).coeff_at(witness);
            let og = g.expand(Center::Zero, 1).order().unwrap_or(witness);
            let window_g = ((witness - og).max(0) + 1) as usize;
            let cg = g.expand(Center::Zero, window_g.max(1)).coeff_at(witness);
            match (cf, cg) {
                (Some(a), Some(b)) => prop_assert_ne!(a, b),
                _ => prop_assert!(false, "windows must cover the witness index"),
            }
        }
    }

    #[test]
    fn equal_is_an_equivalence(
        f in hilbert_rational(),
        g in hilbert_rational(),
        extra in prop::collection::vec(1u32..4, 0..3),
    ) {
        prop_assert!(f.equal(&f));
        prop_assert_eq!(f.equal(&g), g.equal(&f));
        // rescale the representation of f without changing its value
        let mut h = f.clone();
        for d in extra {
            let factor = HilbertRational::new(LaurentPoly::one_minus_t_pow(d), [d]);
            h = h.mul(&factor);
        }
        prop_assert!(f.equal(&h));
        if f.equal(&g) {
            prop_assert!(h.equal(&g));
        }
    }

    #[test]
    fn combine_round_trips_through_division(
        f in hilbert_rational(),
        g in nonzero_hilbert_rational(),
    ) {
        let q = f.div(&g).unwrap();
        prop_assert!(q.mul(&g).equal(&f));
        let s = f.add(&g);
        prop_assert!(s.sub(&g).equal(&f));
    }

    #[test]
    fn parse_round_trip(f in hilbert_rational()) {
        let rendered = format!("{f}");
        let back = HilbertRational::parse(&rendered).unwrap();
        prop_assert!(back.equal(&f), "{}", rendered);
        prop_assert_eq!(format!("{back}"), HilbertRational::parse(&format!("{back}")).unwrap().to_string());
    }
}

fn small_poly() -> impl Strategy<Value = MultiPoly<Q>> {
    prop::collection::vec(
        (prop::collection::vec(0u32..3, 3), -4i64..5),
        0..4,
    )
    .prop_map(|terms| MultiPoly::from_int_terms(terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn weighted_degree_is_multiplicative(
        ma in prop::collection::vec(0u32..4, 3),
        mb in prop::collection::vec(0u32..4, 3),
        ca in 1i64..5,
        cb in 1i64..5,
    ) {
        let spec = WeightedRingSpec::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![1, 2, 3],
        )
        .unwrap();
        let a = MultiPoly::<Q>::term(Monomial::from_exps(ma), rat(ca));
        let b = MultiPoly::<Q>::term(Monomial::from_exps(mb), rat(cb));
        let (Homogeneity::Homogeneous(da), Homogeneity::Homogeneous(db)) = (
            weighted_degree(&a, &spec).unwrap(),
            weighted_degree(&b, &spec).unwrap(),
        ) else {
            panic!("monomials are homogeneous");
        };
        let prod = a.mul(&b);
        prop_assert_eq!(
            weighted_degree(&prod, &spec).unwrap(),
            Homogeneity::Homogeneous(da + db)
        );
    }
}

/// Normal forms over a fixed quotient ring: idempotence and compatibility
/// with addition after reduction.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_laws(a in small_poly(), b in small_poly()) {
        let spec = WeightedRingSpec::with_unit_weights(&["x", "y", "z"]).unwrap();
        // x*y - z^2 is homogeneous of degree 2
        let rel = MultiPoly::<Q>::from_int_terms([(vec![1, 1, 0], 1), (vec![0, 0, 2], -1)]);
        let ring = RingPresentation::new(spec, vec![rel]).unwrap();
        let gb = buchberger(&ring, &[0], &[], None).unwrap();
        let wrap = |p: &MultiPoly<Q>| ModVec::from_components(vec![p.clone()]);

        let nf_a = gb.normal_form(&wrap(&a));
        prop_assert_eq!(gb.normal_form(&nf_a.clone()), nf_a.clone());

        let lhs = gb.normal_form(&wrap(&a.add(&b)));
        let pre = nf_a.components()[0].clone();
        let rhs = gb.normal_form(&wrap(&pre.add(&b)));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn field_axioms_for_prime_fields() {
    use laurex_core::polyring::Fp;
    type F = Fp<32003>;
    let mut x = F::new(1);
    for _ in 0..200 {
        x = x.mul(&F::new(12345)).add(&F::new(7));
        if !x.is_zero() {
            let inv = x.inv().unwrap();
            assert!(x.mul(&inv).is_one());
        }
    }
}

#[test]
fn groebner_over_a_prime_field_matches_rationals_on_lead_terms() {
    use laurex_core::polyring::Fp;
    type F = Fp<32003>;
    let spec = WeightedRingSpec::with_unit_weights(&["x", "y", "z"]).unwrap();
    let ring_q = RingPresentation::<Q>::polynomial(spec.clone());
    let ring_f = RingPresentation::<F>::polynomial(spec);
    let gens_q: Vec<ModVec<Q>> = vec![
        ModVec::from_components(vec![MultiPoly::from_int_terms([
            (vec![2, 0, 0], 1),
            (vec![0, 1, 1], -1),
        ])]),
        ModVec::from_components(vec![MultiPoly::from_int_terms([
            (vec![1, 1, 0], 1),
            (vec![0, 0, 2], -1),
        ])]),
    ];
    let to_f = |v: &ModVec<Q>| {
        ModVec::from_components(
            v.components()
                .iter()
                .map(|p| p.map_coeffs(|c| F::from_rational(c).unwrap()))
                .collect(),
        )
    };
    let gens_f: Vec<ModVec<F>> = gens_q.iter().map(|g| to_f(g)).collect();
    let gb_q = buchberger(&ring_q, &[0], &gens_q, None).unwrap();
    let gb_f = buchberger(&ring_f, &[0], &gens_f, None).unwrap();
    assert_eq!(gb_q.leads(), gb_f.leads());
}
