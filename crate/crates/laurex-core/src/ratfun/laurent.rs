use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rat;

/// A Laurent polynomial in one variable `t` with arbitrary-precision
/// rational coefficients. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(0, c)
    }

    pub fn constant_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// The single term `c * t^exp`.
    pub fn term(exp: i64, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// The monomial `t^exp`.
    pub fn t_power(exp: i64) -> Self {
        Self::term(exp, BigRational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    pub fn from_int_terms<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        Self::from_terms(iter.into_iter().map(|(e, c)| (e, rat(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `t^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, k)| (e, k * c)).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// The substitution `t -> 1/t`.
    pub fn invert_var(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Value at `t = 1`, i.e. the sum of all coefficients.
    pub fn eval_one(&self) -> BigRational {
        let mut s = BigRational::zero();
        for (_, c) in self.terms() {
            s += c;
        }
        s
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut s = BigRational::zero();
        for (e, c) in self.terms() {
            let mut p = BigRational::one();
            if e >= 0 {
                for _ in 0..e {
                    p *= x;
                }
            } else {
                let inv = BigRational::one() / x.clone();
                for _ in 0..(-e) {
                    p *= &inv;
                }
            }
            s += c * p;
        }
        s
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms().all(|(_, c)| c.is_integer())
    }

    /// `1 - t^d`.
    pub fn one_minus_t_pow(d: u32) -> Self {
        let mut p = Self::one();
        p.add_term(i64::from(d), &-BigRational::one());
        p
    }

    /// `1 + t^step + t^{2 step} + ... + t^{count * step}`.
    pub fn geometric_sum(step: u32, count: u32) -> Self {
        let mut p = Self::zero();
        for k in 0..=count {
            p.add_term(i64::from(step) * i64::from(k), &BigRational::one());
        }
        p
    }

    /// Recognizes `1 + t^s + ... + t^{s k}` with `k >= 1`; returns `(s, k)`.
    pub fn as_geometric_sum(&self) -> Option<(u32, u32)> {
        if self.terms.len() < 2 {
            return None;
        }
        let exps: Vec<i64> = self.terms.keys().copied().collect();
        if exps[0] != 0 {
            return None;
        }
        let step = exps[1];
        if step <= 0 {
            return None;
        }
        for (i, &e) in exps.iter().enumerate() {
            if e != step * i as i64 {
                return None;
            }
        }
        if self.terms().any(|(_, c)| !c.is_one()) {
            return None;
        }
        let step = u32::try_from(step).ok()?;
        let count = (exps.len() - 1) as u32;
        Some((step, count))
    }

    /// Exact division; `None` when `divisor` does not divide `self` in the
    /// Laurent polynomial ring over the rationals.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (off_n, mut num) = self.to_dense();
        let (off_d, den) = divisor.to_dense();
        let (q, r) = dense_divrem(&mut num, &den);
        if !r.iter().all(BigRational::is_zero) {
            return None;
        }
        Some(Self::from_dense(off_n - off_d, &q))
    }

    /// Monic gcd in the rationals, normalized to lowest exponent zero.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.normalize_unit().0;
        }
        if b.is_zero() {
            return a.normalize_unit().0;
        }
        let (_, mut x) = a.to_dense();
        let (_, mut y) = b.to_dense();
        while !y.iter().all(BigRational::is_zero) {
            let (_, r) = dense_divrem(&mut x, &y);
            x = y;
            y = trim_dense(r);
        }
        // make monic
        let lead = x.last().cloned().unwrap_or_else(BigRational::one);
        let g = Self::from_dense(0, &x);
        g.scale(&(BigRational::one() / lead))
    }

    /// Splits off the unit `c * t^a` with lowest exponent: returns
    /// `(p, a, c)` with `self = p * c * t^a`, `p` having lowest exponent 0
    /// and lowest coefficient 1. Zero maps to `(0, 0, 1)`.
    pub fn normalize_unit(&self) -> (Self, i64, BigRational) {
        match self.min_exp() {
            None => (Self::zero(), 0, BigRational::one()),
            Some(a) => {
                let c = self.coeff(a);
                let p = self.shift(-a).scale(&(BigRational::one() / c.clone()));
                (p, a, c)
            }
        }
    }

    /// Rewrites `self = p * s * t^a` with `p` an integer-coefficient
    /// polynomial of lowest exponent 0, positive lowest coefficient and
    /// content 1; returns `(p, s, a)`. Zero maps to `(0, 1, 0)`.
    pub fn primitive_decompose(&self) -> (Self, BigRational, i64) {
        if self.is_zero() {
            return (Self::zero(), BigRational::one(), 0);
        }
        let a = self.min_exp().unwrap();
        let mut den_lcm = BigInt::one();
        for (_, c) in self.terms() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in self.terms() {
            let n = c.numer() * &den_lcm / c.denom();
            num_gcd = num_gcd.gcd(&n);
        }
        let mut scale = BigRational::new(num_gcd, den_lcm);
        if self.coeff(a).is_negative() {
            scale = -scale;
        }
        let p = self.shift(-a).scale(&(BigRational::one() / scale.clone()));
        (p, scale, a)
    }

    /// Dense coefficient vector: returns `(offset, coeffs)` with
    /// `self = sum coeffs[i] * t^(offset + i)` and `coeffs[0] != 0`.
    pub fn to_dense(&self) -> (i64, Vec<BigRational>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = Vec::with_capacity((hi - lo + 1) as usize);
                for e in lo..=hi {
                    v.push(self.coeff(e));
                }
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }

    pub fn from_dense(offset: i64, coeffs: &[BigRational]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(offset + i as i64, c);
        }
        p
    }

    /// Multiplicity of the root `t = 1`.
    pub fn multiplicity_at_one(&self) -> u32 {
        if self.is_zero() {
            return 0;
        }
        let one_minus_t = Self::one_minus_t_pow(1);
        let mut m = 0;
        let mut p = self.clone();
        while let Some(q) = p.exact_div(&one_minus_t) {
            m += 1;
            p = q;
        }
        m
    }
}

/// Division with remainder on dense ascending coefficient vectors; consumes
/// `num` as scratch. Returns `(quotient, remainder)`.
fn dense_divrem(num: &mut Vec<BigRational>, den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let den = trim_dense(den.to_vec());
    assert!(!den.is_empty(), "dense division by zero");
    let dn = den.len();
    if num.len() < dn {
        return (Vec::new(), core::mem::take(num));
    }
    let lead = den[dn - 1].clone();
    let qlen = num.len() - dn + 1;
    let mut q = alloc::vec![BigRational::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = num[k + dn - 1].clone() / lead.clone();
        if c.is_zero() {
            continue;
        }
        q[k] = c.clone();
        for (j, d) in den.iter().enumerate() {
            let v = num[k + j].clone() - d * &c;
            num[k + j] = v;
        }
    }
    num.truncate(dn - 1);
    let r = trim_dense(core::mem::take(num));
    (trim_dense(q), r)
}

fn trim_dense(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(BigRational::is_zero) {
        v.pop();
    }
    v
}

impl fmt::Display for LaurentPoly {
    /// Terms in ascending exponent order, e.g. `1-2t+t^2` or `t^-2`.
    /// Rational coefficients render with an explicit `*`, e.g. `1/3*t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if e == 0 {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    if abs.is_integer() {
                        write!(f, "{}", abs)?;
                    } else {
                        write!(f, "{}*", abs)?;
                    }
                }
                if e == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{}", e)?;
                }
            }
        }
        Ok(())
    }
}
