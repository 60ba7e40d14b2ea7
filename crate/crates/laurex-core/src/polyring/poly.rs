use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::BigRational;

use super::field::Field;
use super::presentation::WeightedRingSpec;

/// Exponent vector of a monomial. The derived `Ord` is the structural
/// (lexicographic) order used only as a map key; semantic comparisons go
/// through `groebner::MonomialOrder`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n_vars: usize) -> Self {
        Monomial {
            exps: alloc::vec![0; n_vars],
        }
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut m = Self::one(n_vars);
        m.exps[i] = 1;
        m
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn n_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| i64::from(e) * i64::from(w))
            .sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn try_div(&self, other: &Self) -> Option<Self> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (&a, &b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn display_with(&self, spec: &WeightedRingSpec) -> String {
        if self.is_one() {
            return String::from("1");
        }
        let mut out = String::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(spec.var_name(i));
            if e > 1 {
                out.push('^');
                out.push_str(&alloc::format!("{e}"));
            }
        }
        out
    }
}

/// Result of a weighted-degree query on a nonzero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(i64),
    Inhomogeneous,
}

/// Sparse multivariate polynomial with coefficients in `F`. No zero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly<F: Field> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: F) -> Self {
        Self::term(Monomial::one(n_vars), c)
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        Self::term(Monomial::var(n_vars, i), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// `Some(c)` when the polynomial is the nonzero constant `c`.
    pub fn as_constant(&self) -> Option<&F> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c);
            }
        }
        None
    }

    pub fn add_term(&mut self, m: Monomial, c: &F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// Multiplication by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            for (mm, cc) in other.terms() {
                out.add_term(m.mul(mm), &c.mul(cc));
            }
        }
        out
    }

    /// Degree of a nonzero homogeneous polynomial; `None` when zero or
    /// inhomogeneous.
    pub fn homogeneous_degree(&self, spec: &WeightedRingSpec) -> Option<i64> {
        match super::weighted_degree(self, spec) {
            Ok(Homogeneity::Homogeneous(d)) => Some(d),
            _ => None,
        }
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let g = f(c);
                    if g.is_zero() {
                        None
                    } else {
                        Some((m.clone(), g))
                    }
                })
                .collect(),
        }
    }

    pub fn display_with(&self, spec: &WeightedRingSpec) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let minus_one = F::one().neg();
        let mut out = String::new();
        for (m, c) in self.terms() {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            if m.is_one() {
                out.push_str(&alloc::format!("{c}"));
            } else if c.is_one() {
                out.push_str(&m.display_with(spec));
            } else if *c == minus_one {
                out.push('-');
                out.push_str(&m.display_with(spec));
            } else {
                out.push_str(&alloc::format!("{c}*{}", m.display_with(spec)));
            }
        }
        out
    }
}

impl MultiPoly<BigRational> {
    /// Parses integer coefficients directly; convenience for tests and
    /// fixtures.
    pub fn from_int_terms<I: IntoIterator<Item = (Vec<u32>, i64)>>(iter: I) -> Self {
        Self::from_terms(
            iter.into_iter()
                .map(|(e, c)| (Monomial::from_exps(e), crate::ratfun::rat(c))),
        )
    }
}
