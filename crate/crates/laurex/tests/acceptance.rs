//! Acceptance suite: one test per release criterion, each printing a
//! PASS line after its exact checks succeed. Everything runs over the
//! rationals with zero tolerance.

use laurex::corpus;
use laurex::session::{instantiate, Session};
use laurex_core::homalg::{
    ext_table, module_hilbert, ring_hilbert, tor_table_from_resolution,
};
use laurex_core::invariants::{
    agreement_level, bass_bound, canonical_hilbert, check_identity, check_ext_expansion, check_ext_sum,
    chi, epsilon, laurent_coeffs, phi, ring_dimension, Hypotheses, IdentityKind, ReportValue,
    ExtSumMode, Verdict,
};
use laurex_core::polyring::{
    free_hilbert, GradedMatrix, ModulePresentation, Monomial, MultiPoly, RingPresentation,
    WeightedRingSpec,
};
use laurex_core::ratfun::{rat, ratio, Center, HilbertRational};
use laurex_core::reference::ext_strand_dimension;
use laurex_core::resolve::minimal_resolution;
use num_rational::BigRational;
use num_traits::Signed;

type Q = BigRational;

fn session(name: &str) -> Session<Q> {
    let entry = corpus::find(name).unwrap();
    instantiate::<Q>(&entry.parse().unwrap()).unwrap()
}

fn module(session: &Session<Q>, name: &str) -> ModulePresentation<Q> {
    session.module(name).unwrap()
}

fn hr(s: &str) -> HilbertRational {
    HilbertRational::parse(s).unwrap()
}

#[test]
fn criterion_01_example15_reproduction() {
    let s = session("example15");
    let r = module(&s, "R");
    let m = module(&s, "M");

    // raw Hilbert shape and exact value of H_R
    let h_r = module_hilbert(&r).unwrap();
    assert_eq!(h_r.to_string(), "(1-t^2) / (1-t)^4");
    assert!(h_r.equal(&hr("(1-t^2) / (1-t)^4")));

    let h_m = module_hilbert(&m).unwrap();
    assert!(h_m.equal(&hr("(1) / (1-t)^2")));

    let table = ext_table(&m, &m, 7).unwrap();
    assert!(table.entries()[0].equal(&h_m), "Hom(M, M)");
    assert!(table.entries()[1].equal(&h_m), "Ext^1(M, M)");
    for i in 1..=3usize {
        let even = &table.entries()[2 * i];
        assert!(
            even.equal(&HilbertRational::t_power(-2 * i as i64)),
            "Ext^{}",
            2 * i
        );
    }
    for i in 1..=2usize {
        assert!(table.entries()[2 * i + 1].is_zero(), "Ext^{}", 2 * i + 1);
    }

    let report = check_identity(
        &m,
        &m,
        IdentityKind::Eq42,
        &table,
        &Hypotheses {
            domain: true,
            regular_in_codim: Some(2),
            ..Hypotheses::default()
        },
    )
    .unwrap();
    assert_eq!(report.verdict, Verdict::Fails);
    let (ReportValue::Number(lhs), ReportValue::Number(rhs)) = (&report.lhs, &report.rhs) else {
        panic!("numeric report expected");
    };
    assert_eq!(*lhs, rat(0));
    assert_eq!(*rhs, rat(-1));

    println!("ACCEPTANCE 01 example15-reproduction: PASS");
}

#[test]
fn criterion_02_example16_reproduction() {
    let s = session("example16");
    let rp = module(&s, "Rp");
    let mp = module(&s, "Mp");

    let h_rp = module_hilbert(&rp).unwrap();
    assert_eq!(h_rp.to_string(), "(1-3t^2+2t^3) / (1-t)^6");
    assert!(h_rp.equal(&hr("(1-3t^2+2t^3) / (1-t)^6")));
    assert_eq!(ring_dimension(rp.ring()).unwrap(), 4);
    let mult = laurex_core::invariants::multiplicity_poly(&rp).unwrap();
    assert_eq!(
        mult.e,
        laurex_core::ratfun::LaurentPoly::from_int_terms([(0, 1), (1, 2)])
    );
    assert_eq!(mult.dim, 4);
    assert_eq!(mult.multiplicity, 3.into());
    assert!(module_hilbert(&mp).unwrap().equal(&hr("(1) / (1-t)^3")));

    let table = ext_table(&mp, &rp, 2).unwrap();
    assert!(table.entries()[0].is_zero(), "Hom(M', R')");
    assert!(table.entries()[1].equal(&hr("(1) / (1-t)^3")), "Ext^1");
    assert!(table.entries()[2].is_zero(), "Ext^2");

    let report = check_identity(
        &mp,
        &rp,
        IdentityKind::Eq62,
        &table,
        &Hypotheses {
            domain: true,
            regular_in_codim: Some(3),
            ..Hypotheses::default()
        },
    )
    .unwrap();
    assert_eq!(report.verdict, Verdict::Fails);
    let (ReportValue::Number(lhs), ReportValue::Number(rhs)) = (&report.lhs, &report.rhs) else {
        panic!("numeric report expected");
    };
    assert_eq!(*lhs, rat(0));
    assert_eq!(*rhs, ratio(1, 3));

    println!("ACCEPTANCE 02 example16-reproduction: PASS");
}

/// Small deterministic generator for the randomized suites.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// A random monomial-presented module over a random small weighted
/// polynomial ring: presentation columns are single monomials placed at a
/// single position, with column degrees at most 3.
fn random_monomial_module(rng: &mut Rng, ring: &RingPresentation<Q>) -> ModulePresentation<Q> {
    let spec = ring.spec();
    let n_vars = spec.n_vars();
    let rank = 1 + rng.below(2) as usize;
    let row_degrees: Vec<i64> = (0..rank).map(|_| rng.below(2) as i64).collect();
    let n_cols = rng.below(4) as usize;
    let mut col_degrees = Vec::new();
    let mut rows: Vec<Vec<MultiPoly<Q>>> = vec![Vec::new(); rank];
    for _ in 0..n_cols {
        let pos = rng.below(rank as u64) as usize;
        // a monomial whose weighted degree keeps the column degree <= 3
        let budget = 3 - row_degrees[pos];
        let mut exps = vec![0u32; n_vars];
        let mut spent = 0i64;
        for _ in 0..3 {
            let v = rng.below(n_vars as u64) as usize;
            let w = i64::from(spec.weight(v));
            if spent + w <= budget {
                exps[v] += 1;
                spent += w;
            }
        }
        if spent == 0 {
            // degree-zero relation columns would be unit entries; place a
            // variable if it fits, otherwise drop the column
            if budget >= i64::from(spec.weight(0)) {
                exps[0] = 1;
                spent = i64::from(spec.weight(0));
            } else {
                continue;
            }
        }
        let mono = Monomial::from_exps(exps);
        col_degrees.push(row_degrees[pos] + spent);
        for (i, row) in rows.iter_mut().enumerate() {
            row.push(if i == pos {
                MultiPoly::term(mono.clone(), rat(1))
            } else {
                MultiPoly::zero()
            });
        }
    }
    let matrix = GradedMatrix::new(spec, row_degrees, col_degrees, rows).unwrap();
    ModulePresentation::new(ring.clone(), matrix)
}

fn random_ring(rng: &mut Rng) -> RingPresentation<Q> {
    let n_vars = 1 + rng.below(3) as usize;
    let names = ["x", "y", "z"][..n_vars].to_vec();
    let weights: Vec<u32> = (0..n_vars).map(|_| 1 + rng.below(2) as u32).collect();
    let spec = WeightedRingSpec::new(
        names.into_iter().map(String::from).collect(),
        weights,
    )
    .unwrap();
    RingPresentation::polynomial(spec)
}

#[test]
fn criterion_03_alternating_ext_sum_property_suite() {
    let mut rng = Rng(0x1357_9bdf_2468_ace0);
    let mut checked = 0;
    while checked < 200 {
        let ring = random_ring(&mut rng);
        let m = random_monomial_module(&mut rng, &ring);
        let n = random_monomial_module(&mut rng, &ring);
        let max_i = ring.spec().n_vars();
        let table = ext_table(&m, &n, max_i).unwrap();
        assert!(table.vanishing_certified(), "polynomial rings certify");
        let report = check_ext_sum(&m, &n, &table, ExtSumMode::Exact).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::Holds,
            "pair {checked} over {:?}",
            ring.spec().weights()
        );
        checked += 1;
    }
    println!("ACCEPTANCE 03 alternating-ext-sum-suite: PASS ({checked} pairs)");
}

#[test]
fn criterion_04_finite_length_expansion_suite() {
    // finite-length second modules over the corpus rings
    let mut cases: Vec<(ModulePresentation<Q>, ModulePresentation<Q>, &str)> = Vec::new();
    for name in ["poly1", "poly2", "poly3", "poly4", "poly-weighted"] {
        let s = session(name);
        let k = module(&s, "K");
        cases.push((k.clone(), k.clone(), name));
    }
    let s15 = session("example15");
    let m = module(&s15, "M");
    let k15 = module(&s15, "K");
    cases.push((m.clone(), k15.clone(), "example15 (M, K)"));
    cases.push((k15.clone(), k15.clone(), "example15 (K, K)"));

    for (m, n, label) in &cases {
        let report = check_ext_expansion(m, n, 8, 8).unwrap();
        assert_eq!(report.verdict, Verdict::Holds, "{label}");
    }
    println!(
        "ACCEPTANCE 04 finite-length-expansion-suite: PASS ({} pairs)",
        cases.len()
    );
}

#[test]
fn criterion_05_tor_expansion_suite() {
    // sum of (-1)^i [Tor_i]_0 equals [chi]_0 through t^12
    let mut cases: Vec<(ModulePresentation<Q>, ModulePresentation<Q>, &str)> = Vec::new();
    let s15 = session("example15");
    let m = module(&s15, "M");
    let k15 = module(&s15, "K");
    cases.push((m.clone(), m.clone(), "example15 (M, M)"));
    cases.push((m.clone(), k15.clone(), "example15 (M, K)"));
    let p3 = session("poly3");
    let k3 = module(&p3, "K");
    cases.push((k3.clone(), k3.clone(), "poly3 (K, K)"));
    let pw = session("poly-weighted");
    let kw = module(&pw, "K");
    cases.push((kw.clone(), kw.clone(), "poly-weighted (K, K)"));

    const THROUGH: i64 = 12;
    for (m, n, label) in &cases {
        let chi_mn = chi(m, n).unwrap();
        // Tor_i lives in internal degrees >= i here, so depth 13 screens
        // everything visible through t^12; assert the screen holds
        let depth = (THROUGH + 1) as usize;
        let res = minimal_resolution(m, depth + 1).unwrap();
        let tors = tor_table_from_resolution(&res, n, depth).unwrap();
        let mut sum = laurex_core::ratfun::LaurentExpansion::zero(Center::Zero);
        for (i, h) in tors.iter().enumerate() {
            if h.is_zero() {
                continue;
            }
            let probe = h.expand(Center::Zero, 1);
            let ord = probe.order().unwrap();
            if i == depth {
                assert!(ord > THROUGH, "{label}: depth insufficient");
            }
            let window = (THROUGH - ord + 1).max(1) as usize;
            let e = h.expand(Center::Zero, window);
            sum = if i % 2 == 0 { sum.add(&e) } else { sum.add(&e.neg()) };
        }
        let chi_exp = {
            let probe = chi_mn.expand(Center::Zero, 1);
            let ord = probe.order().unwrap();
            chi_mn.expand(Center::Zero, (THROUGH - ord + 1).max(1) as usize)
        };
        assert!(
            sum.agrees_through(&chi_exp, THROUGH),
            "{label}: sum {sum} vs chi {chi_exp}"
        );
    }
    println!(
        "ACCEPTANCE 05 tor-expansion-suite: PASS ({} pairs through t^{THROUGH})",
        cases.len()
    );
}

#[test]
fn criterion_06_laurent_coefficient_laws() {
    // vanishing/positivity on every corpus module, additivity, translation
    let mut modules: Vec<(ModulePresentation<Q>, String)> = Vec::new();
    for entry in corpus::CORPUS {
        let s = instantiate::<Q>(&entry.parse().unwrap()).unwrap();
        for (name, m) in &s.modules {
            modules.push((m.clone(), format!("{}::{name}", entry.name)));
        }
        for (name, r) in &s.rings {
            modules.push((
                ModulePresentation::ring_module(r.clone()),
                format!("{}::{name}", entry.name),
            ));
        }
    }
    for (m, label) in &modules {
        let d = ring_dimension(m.ring()).unwrap();
        let h = module_hilbert(m).unwrap();
        let dim = h.pole_order_at_one().expect("corpus modules are nonzero");
        let gap = d - dim;
        let f = laurent_coeffs(m, d.max(gap)).unwrap();
        for j in 0..gap {
            assert_eq!(f.coefficient(j), rat(0), "{label} below the gap");
        }
        assert!(f.coefficient(gap).is_positive(), "{label} at the gap");
    }

    // additivity along split sums and along multiplication by a
    // nonzerodivisor
    let s15 = session("example15");
    let r = module(&s15, "R");
    let m = module(&s15, "M");
    let sum = r.twist(-1).direct_sum(&m).unwrap();
    let f_sum = laurent_coeffs(&sum, 3).unwrap();
    let f_r1 = laurent_coeffs(&r.twist(-1), 3).unwrap();
    let f_m = laurent_coeffs(&m, 3).unwrap();
    for j in 0..=3 {
        assert_eq!(f_sum.coefficient(j), f_r1.coefficient(j) + f_m.coefficient(j));
    }
    let ring = r.ring().clone();
    let x_quot = ModulePresentation::cyclic(ring, vec![MultiPoly::var(4, 0)]).unwrap();
    let f_q = laurent_coeffs(&x_quot, 3).unwrap();
    let f_r = laurent_coeffs(&r, 3).unwrap();
    let f_rt = laurent_coeffs(&r.twist(-1), 3).unwrap();
    for j in 0..=3 {
        assert_eq!(f_r.coefficient(j), f_rt.coefficient(j) + f_q.coefficient(j));
    }

    // translation law at every center for |a| <= 3
    let h = module_hilbert(&m).unwrap();
    for a in [-3i64, -2, -1, 1, 2, 3] {
        let ha = module_hilbert(&m.twist(a)).unwrap();
        let shifted = h.shift(-a);
        assert!(ha.equal(&shifted), "twist {a}");
        for center in [Center::Zero, Center::One, Center::Infinity] {
            assert_eq!(ha.expand(center, 8), shifted.expand(center, 8), "twist {a}");
        }
    }

    println!(
        "ACCEPTANCE 06 laurent-coefficient-laws: PASS ({} modules)",
        modules.len()
    );
}

#[test]
fn criterion_07_divisibility_and_bound_calculator() {
    use laurex_core::ratfun::LaurentPoly;
    // q = 1 when -1 is not a root: bound 2^{d-n}
    let e_n = LaurentPoly::from_int_terms([(0, 1), (1, 2)]);
    let e_r = LaurentPoly::one();
    let report = bass_bound(&e_n, &e_r, 2, 5, 2);
    assert!(report.divisible);
    assert_eq!(report.q, Some(1));
    let b = report.bound.as_ref().unwrap();
    assert_eq!((b.exponent_num, b.exponent_den), (3, 1));
    assert_eq!(b.value.as_ref().unwrap().to_string(), "8");

    // quotient 1 + t: q = 2, bound 2^{(d-n+1)/2}
    let e_n = LaurentPoly::from_int_terms([(0, 1), (1, 1)]);
    let report2 = bass_bound(&e_n, &e_r, 2, 4, 1);
    assert_eq!(report2.q, Some(2));
    let b2 = report2.bound.as_ref().unwrap();
    assert_eq!((b2.exponent_num, b2.exponent_den), (2, 1));

    // the divisor-convention caveat is part of the report text
    for r in [&report, &report2] {
        assert!(
            r.caveats.iter().any(|c| c.contains("1 + t + ... + t^{p^r - 1}")),
            "caveat missing"
        );
    }

    // odd multiplicity specialization on a corpus module: e_K = 1 over the
    // quadric hypersurface, d - n = 3
    let s15 = session("example15");
    let k = module(&s15, "K");
    let e_k = laurex_core::invariants::multiplicity_poly(&k).unwrap();
    let r_mod = module(&s15, "R");
    let e_ring = laurex_core::invariants::multiplicity_poly(&r_mod).unwrap();
    let d = ring_dimension(k.ring()).unwrap();
    let kr = bass_bound(&e_k.e, &e_ring.e, 2, d, e_k.dim);
    // e_R(1/t) = t^{-1}(1 + t) does not divide 1
    assert!(!kr.divisible);

    println!("ACCEPTANCE 07 divisibility-and-bound-calculator: PASS");
}

#[test]
fn criterion_08_rank_formula_instance() {
    let s15 = session("example15");
    let m = module(&s15, "M");
    let table = ext_table(&m, &m, 1).unwrap();
    let report =
        check_identity(&m, &m, IdentityKind::Bc1, &table, &Hypotheses::default()).unwrap();
    assert_eq!(report.verdict, Verdict::Holds);
    let (ReportValue::Number(lhs), ReportValue::Number(rhs)) = (&report.lhs, &report.rhs) else {
        panic!("numbers expected");
    };
    assert_eq!(*lhs, rat(0));
    assert_eq!(*rhs, rat(0));
    // the rank entering the right side is zero
    assert_eq!(
        laurex_core::homalg::rank_over_domain(&m).unwrap(),
        rat(0)
    );
    println!("ACCEPTANCE 08 rank-formula-instance: PASS");
}

#[test]
fn criterion_09_degreewise_ext_oracle() {
    // pair list with per-pair index and degree windows: the dense route
    // materializes one basis vector per standard monomial, so windows on
    // the six-variable pair with an infinite second module are kept small
    // to stay inside the runtime budget; all other pairs get the full
    // i <= 4, |n| <= 8 sweep
    let mut pairs: Vec<(ModulePresentation<Q>, ModulePresentation<Q>, usize, i64, String)> =
        Vec::new();
    let s15 = session("example15");
    let m = module(&s15, "M");
    let k15 = module(&s15, "K");
    pairs.push((m.clone(), m.clone(), 4, 8, "example15 (M, M)".into()));
    pairs.push((m.clone(), k15.clone(), 4, 8, "example15 (M, K)".into()));
    pairs.push((k15.clone(), k15.clone(), 4, 8, "example15 (K, K)".into()));
    pairs.push((
        module(&s15, "R"),
        m.clone(),
        4,
        8,
        "example15 (R, M)".into(),
    ));
    for name in ["poly2", "poly-weighted"] {
        let s = session(name);
        let k = module(&s, "K");
        pairs.push((k.clone(), k.clone(), 4, 8, format!("{name} (K, K)")));
    }
    let s16 = session("example16");
    let mp = module(&s16, "Mp");
    let rp = module(&s16, "Rp");
    let k16 = ModulePresentation::residue_field(rp.ring().clone());
    pairs.push((mp.clone(), k16, 4, 8, "example16 (Mp, K)".into()));
    pairs.push((mp.clone(), rp.clone(), 2, 1, "example16 (Mp, Rp)".into()));

    let mut strands = 0usize;
    for (m, n, max_i, span, label) in &pairs {
        let res = minimal_resolution(m, max_i + 1).unwrap();
        let table = laurex_core::homalg::ext_table_from_resolution(&res, n, *max_i).unwrap();
        for i in 0..=*max_i {
            let h = &table.entries()[i];
            for degree in -span..=*span {
                let expected = if h.is_zero() {
                    rat(0)
                } else {
                    let ord = h.expand(Center::Zero, 1).order().unwrap();
                    let window = (degree - ord + 1).max(1) as usize;
                    h.expand(Center::Zero, window)
                        .coeff_at(degree)
                        .unwrap_or_else(|| rat(0))
                };
                let got = ext_strand_dimension(&res, n, i, degree).unwrap();
                assert_eq!(
                    rat(got as i64),
                    expected,
                    "{label}: Ext^{i} in degree {degree}"
                );
                strands += 1;
            }
        }
    }
    println!("ACCEPTANCE 09 degreewise-ext-oracle: PASS ({strands} strands)");
}

#[test]
fn criterion_10_two_route_hilbert_and_canonical_series() {
    // Euler characteristic route on modules with finite resolutions
    let mut count = 0;
    for name in ["poly1", "poly2", "poly3", "poly4", "poly-weighted"] {
        let s = session(name);
        let k = module(&s, "K");
        let res = minimal_resolution(&k, k.ring().spec().n_vars() + 1).unwrap();
        assert!(!res.is_truncated(), "{name}: Koszul resolution terminates");
        assert!(
            res.euler_characteristic()
                .equal(&module_hilbert(&k).unwrap()),
            "{name}"
        );
        count += 1;
    }
    // a finite-projective-dimension module over the hypersurface
    let s15 = session("example15");
    let ring15 = s15.ring("R").unwrap().clone();
    let x_quot = ModulePresentation::cyclic(ring15.clone(), vec![MultiPoly::var(4, 0)]).unwrap();
    let res = minimal_resolution(&x_quot, 5).unwrap();
    assert!(!res.is_truncated());
    assert!(res
        .euler_characteristic()
        .equal(&module_hilbert(&x_quot).unwrap()));
    count += 1;

    // canonical-series verification over every corpus weight profile
    let mut profiles = vec![
        vec![1u32],
        vec![1, 1],
        vec![1, 1, 1],
        vec![1, 1, 1, 1],
        vec![1, 2],
    ];
    profiles.dedup();
    for weights in &profiles {
        let names: Vec<String> = (0..weights.len()).map(|i| format!("x{i}")).collect();
        let spec = WeightedRingSpec::new(names, weights.clone()).unwrap();
        let ring = RingPresentation::<Q>::polynomial(spec.clone());
        let (series, reports) = canonical_hilbert(&ring, true).unwrap();
        assert!(series.equal(&free_hilbert(&[spec.total_weight()], &spec)));
        assert!(
            reports.iter().all(|r| r.verdict == Verdict::Holds),
            "weights {weights:?}"
        );
    }
    // and over both example rings
    let (series15, reports15) = canonical_hilbert(&ring15, true).unwrap();
    assert!(series15.equal(&ring_hilbert(&ring15).unwrap().shift(2)));
    assert!(reports15.iter().all(|r| r.verdict == Verdict::Holds));

    let s16 = session("example16");
    let ring16 = s16.ring("Rp").unwrap().clone();
    let (series16, reports16) = canonical_hilbert(&ring16, true).unwrap();
    let mut reflected = ring_hilbert(&ring16).unwrap().invert_variable();
    if ring_dimension(&ring16).unwrap() % 2 != 0 {
        reflected = reflected.neg();
    }
    assert!(series16.equal(&reflected));
    assert!(reports16.iter().all(|r| r.verdict == Verdict::Holds));

    println!(
        "ACCEPTANCE 10 two-route-hilbert-and-canonical: PASS ({count} modules, {} profiles)",
        profiles.len() + 2
    );
}

#[test]
fn criterion_cross_check_agreement_levels() {
    // supporting evidence used by several criteria: the counterexample
    // pair agrees exactly up to level 1, polynomial pairs agree fully
    let s15 = session("example15");
    let m = module(&s15, "M");
    let table = ext_table(&m, &m, 4).unwrap();
    assert_eq!(agreement_level(&m, &m, &table, 3).unwrap(), 1);
    assert_eq!(epsilon(&m, &m, 2, &table).unwrap(), rat(0));
    let p = phi(&m, &m).unwrap();
    let d = ring_dimension(m.ring()).unwrap();
    assert_eq!(p.coefficient_at_one(d, 2), ratio(-1, 2));

    let s16 = session("example16");
    let mp = module(&s16, "Mp");
    let rp = module(&s16, "Rp");
    let table = ext_table(&mp, &rp, 3).unwrap();
    let level = agreement_level(&mp, &rp, &table, 2).unwrap();
    assert!(level >= 1, "level {level}");
    println!("ACCEPTANCE XX agreement-levels: PASS");
}
