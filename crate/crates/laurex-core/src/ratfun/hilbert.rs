use alloc::collections::BTreeMap;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::expansion::{expand_hilbert, Center, LaurentExpansion};
use super::laurent::LaurentPoly;

/// Arithmetic operation selector for [`HilbertRational::combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatFunError {
    /// Division by the zero rational function.
    DivisionByZero,
}

impl fmt::Display for RatFunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatFunError::DivisionByZero => write!(f, "division by the zero rational function"),
        }
    }
}

/// An exact rational function in the shape Hilbert series take:
///
/// ```text
///           numerator(t)
///  ---------------------------------
///  prod_d (1 - t^d)^m_d * residual(t)
/// ```
///
/// The denominator is kept as the unexpanded multiset `{d -> m_d}`; the
/// residual factor is an integer polynomial with positive constant term,
/// content 1, no `(1 - t^e)` divisor and no pending geometric merge, and is
/// `1` for every genuine Hilbert series. Units of the Laurent ring are
/// always absorbed into the numerator.
#[derive(Clone, Debug)]
pub struct HilbertRational {
    num: LaurentPoly,
    shape: BTreeMap<u32, u32>,
    residual: LaurentPoly,
    canonical: bool,
}

impl HilbertRational {
    /// `num / prod (1 - t^d)` for the listed degrees.
    pub fn new<I: IntoIterator<Item = u32>>(num: LaurentPoly, denom_degrees: I) -> Self {
        let mut shape: BTreeMap<u32, u32> = BTreeMap::new();
        for d in denom_degrees {
            assert!(d >= 1, "denominator degree must be positive");
            *shape.entry(d).or_insert(0) += 1;
        }
        if num.is_zero() {
            return Self::zero();
        }
        let canonical = shape.is_empty();
        HilbertRational {
            num,
            shape,
            residual: LaurentPoly::one(),
            canonical,
        }
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        Self::new(num, [])
    }

    pub fn zero() -> Self {
        HilbertRational {
            num: LaurentPoly::zero(),
            shape: BTreeMap::new(),
            residual: LaurentPoly::one(),
            canonical: true,
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn t_power(e: i64) -> Self {
        Self::from_laurent(LaurentPoly::t_power(e))
    }

    /// General exact fraction, normalized so that the denominator splits
    /// into `(1 - t^d)` factors and a residual as documented on the type.
    pub fn from_fraction(num: LaurentPoly, den: LaurentPoly) -> Result<Self, RatFunError> {
        Self::build(num, BTreeMap::new(), den)
    }

    fn build(
        num: LaurentPoly,
        mut shape: BTreeMap<u32, u32>,
        residual_raw: LaurentPoly,
    ) -> Result<Self, RatFunError> {
        if residual_raw.is_zero() {
            return Err(RatFunError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (mut residual, scale, exp) = residual_raw.primitive_decompose();
        let num = num
            .scale(&(BigRational::one() / scale))
            .shift(-exp);

        // Pull (1 - t^e) factors out of the residual, largest e first.
        while !residual.is_one() {
            let span = residual.max_exp().unwrap_or(0);
            let mut extracted = false;
            let mut e = span;
            while e >= 1 {
                let factor = LaurentPoly::one_minus_t_pow(e as u32);
                if let Some(q) = residual.exact_div(&factor) {
                    *shape.entry(e as u32).or_insert(0) += 1;
                    residual = q;
                    extracted = true;
                    break;
                }
                e -= 1;
            }
            if !extracted {
                break;
            }
        }

        // `(1 + t^s + ... + t^{s k}) * (1 - t^s) = 1 - t^{s (k + 1)}`: merge a
        // geometric residual with an available shape factor.
        if let Some((step, count)) = residual.as_geometric_sum() {
            let have = shape.get(&step).copied().unwrap_or(0);
            if have >= 1 {
                if have == 1 {
                    shape.remove(&step);
                } else {
                    shape.insert(step, have - 1);
                }
                *shape.entry(step * (count + 1)).or_insert(0) += 1;
                residual = LaurentPoly::one();
            }
        }

        shape.retain(|_, m| *m > 0);
        Ok(HilbertRational {
            num,
            shape,
            residual,
            canonical: false,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// Multiset `{d -> multiplicity}` of `(1 - t^d)` denominator factors.
    pub fn denominator_shape(&self) -> &BTreeMap<u32, u32> {
        &self.shape
    }

    pub fn residual(&self) -> &LaurentPoly {
        &self.residual
    }

    /// True when this value has been reduced: the numerator and the expanded
    /// denominator have unit gcd over the rationals.
    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// The expanded denominator polynomial.
    pub fn denominator_poly(&self) -> LaurentPoly {
        let mut d = self.residual.clone();
        for (&deg, &mult) in &self.shape {
            d = d.mul(&LaurentPoly::one_minus_t_pow(deg).pow(mult));
        }
        d
    }

    pub fn combine(&self, op: CombineOp, other: &Self) -> Result<Self, RatFunError> {
        match op {
            CombineOp::Add => Ok(self.add(other)),
            CombineOp::Sub => Ok(self.sub(other)),
            CombineOp::Mul => Ok(self.mul(other)),
            CombineOp::Div => self.div(other),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_signed(other, true)
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        if other.is_zero() {
            return self.clone();
        }
        // Common denominator: pointwise max of the shapes, lcm of residuals.
        let mut common: BTreeMap<u32, u32> = self.shape.clone();
        for (&d, &m) in &other.shape {
            let e = common.entry(d).or_insert(0);
            *e = (*e).max(m);
        }
        let extra_self = shape_diff_poly(&common, &self.shape);
        let extra_other = shape_diff_poly(&common, &other.shape);
        let g = LaurentPoly::gcd(&self.residual, &other.residual);
        let res_cofactor_self = other
            .residual
            .exact_div(&g)
            .expect("gcd divides its arguments");
        let res_cofactor_other = self
            .residual
            .exact_div(&g)
            .expect("gcd divides its arguments");
        let residual_common = self.residual.mul(&res_cofactor_self);
        let a = self.num.mul(&extra_self).mul(&res_cofactor_self);
        let b = other.num.mul(&extra_other).mul(&res_cofactor_other);
        let n = if negate { a.sub(&b) } else { a.add(&b) };
        Self::build(n, common, residual_common).expect("denominator is nonzero")
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.num = out.num.neg();
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.num = out.num.scale(c);
        out
    }

    /// Multiplication by `t^a`.
    pub fn shift(&self, a: i64) -> Self {
        let mut out = self.clone();
        out.num = out.num.shift(a);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut shape = self.shape.clone();
        for (&d, &m) in &other.shape {
            *shape.entry(d).or_insert(0) += m;
        }
        Self::build(
            self.num.mul(&other.num),
            shape,
            self.residual.mul(&other.residual),
        )
        .expect("denominator is nonzero")
    }

    pub fn div(&self, other: &Self) -> Result<Self, RatFunError> {
        if other.is_zero() {
            return Err(RatFunError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Cancel common (1 - t^d) factors first so the Hilbert shape stays
        // visible, then normalize the remaining denominator.
        let mut den_shape: BTreeMap<u32, u32> = BTreeMap::new();
        let mut num_extra: BTreeMap<u32, u32> = BTreeMap::new();
        for (&d, &m) in &self.shape {
            let o = other.shape.get(&d).copied().unwrap_or(0);
            if m > o {
                den_shape.insert(d, m - o);
            }
        }
        for (&d, &m) in &other.shape {
            let s = self.shape.get(&d).copied().unwrap_or(0);
            if m > s {
                num_extra.insert(d, m - s);
            }
        }
        let mut num = self.num.mul(&other.residual);
        for (&d, &m) in &num_extra {
            num = num.mul(&LaurentPoly::one_minus_t_pow(d).pow(m));
        }
        let den_extra = other.num.mul(&self.residual);
        Self::build(num, den_shape, den_extra)
    }

    /// The substitution `t -> 1/t`, with each `1/(1 - t^{-d})` rewritten as
    /// `-t^d/(1 - t^d)` so the result is again in Hilbert shape.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut num = self.num.invert_var();
        let mut total_shift = 0i64;
        let mut sign_flips = 0u32;
        for (&d, &m) in &self.shape {
            total_shift += i64::from(d) * i64::from(m);
            sign_flips += m;
        }
        num = num.shift(total_shift);
        if sign_flips % 2 == 1 {
            num = num.neg();
        }
        Self::build(num, self.shape.clone(), self.residual.invert_var())
            .expect("denominator is nonzero")
    }

    /// Exact equality as rational functions, by cross-multiplication.
    pub fn equal(&self, other: &Self) -> bool {
        let lhs = self.num.mul(&other.denominator_poly());
        let rhs = other.num.mul(&self.denominator_poly());
        lhs == rhs
    }

    /// Fully reduced form: numerator and denominator coprime, denominator
    /// re-expressed through `(1 - t^d)` factors where possible.
    pub fn reduce(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let den = self.denominator_poly();
        let g = LaurentPoly::gcd(&self.num, &den);
        let (num, den) = if g.is_one() {
            (self.num.clone(), den)
        } else {
            (
                self.num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let mut out = Self::build(num, BTreeMap::new(), den).expect("denominator nonzero");
        out.canonical = true;
        out
    }

    /// Order of the Laurent expansion around 1; `None` for the zero
    /// function. Negative values are poles: `-pole_order_at_one`.
    pub fn order_at_one(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let num_mult = i64::from(self.num.multiplicity_at_one());
        let den_mult: i64 = self.shape.values().map(|&m| i64::from(m)).sum();
        Some(num_mult - den_mult)
    }

    /// Pole order at `t = 1` (zero or negative when there is no pole).
    pub fn pole_order_at_one(&self) -> Option<i64> {
        self.order_at_one().map(|o| -o)
    }

    /// When the reduced denominator is a unit, the underlying Laurent
    /// polynomial. This is the finite-length test for Hilbert series.
    pub fn as_laurent_polynomial(&self) -> Option<LaurentPoly> {
        self.num.exact_div(&self.denominator_poly())
    }

    pub fn is_laurent_polynomial(&self) -> bool {
        self.as_laurent_polynomial().is_some()
    }

    /// First `terms` coefficients of the Laurent expansion around `center`,
    /// starting at the true order.
    pub fn expand(&self, center: Center, terms: usize) -> LaurentExpansion {
        expand_hilbert(self, center, terms)
    }

    /// Coefficient of `1/(1-t)^{d-j}` in the expansion around 1 calibrated
    /// to a ring of dimension `d`, i.e. the coefficient of `(1-t)^{j-d}`.
    pub fn coefficient_at_one(&self, d: i64, j: i64) -> BigRational {
        let target = j - d;
        let Some(ord) = self.order_at_one() else {
            return BigRational::zero();
        };
        if target < ord {
            return BigRational::zero();
        }
        let count = (target - ord + 1) as usize;
        let e = self.expand(Center::One, count);
        e.coeff_at(target).unwrap_or_else(BigRational::zero)
    }
}

fn shape_diff_poly(big: &BTreeMap<u32, u32>, small: &BTreeMap<u32, u32>) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for (&d, &m) in big {
        let s = small.get(&d).copied().unwrap_or(0);
        if m > s {
            p = p.mul(&LaurentPoly::one_minus_t_pow(d).pow(m - s));
        }
    }
    p
}

impl fmt::Display for HilbertRational {
    /// Renders `(numerator) / (1-t^d1)(1-t^d2)...` with the numerator in
    /// ascending exponent order; repeated factors collapse to powers and a
    /// non-trivial residual is appended as a final parenthesized factor.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        if self.shape.is_empty() && self.residual.is_one() {
            return Ok(());
        }
        write!(f, " / ")?;
        for (&d, &m) in &self.shape {
            if d == 1 {
                write!(f, "(1-t)")?;
            } else {
                write!(f, "(1-t^{})", d)?;
            }
            if m > 1 {
                write!(f, "^{}", m)?;
            }
        }
        if !self.residual.is_one() {
            write!(f, "({})", self.residual)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn hr(num: &[(i64, i64)], den: &[u32]) -> HilbertRational {
        HilbertRational::new(
            LaurentPoly::from_int_terms(num.iter().copied()),
            den.iter().copied(),
        )
    }

    #[test]
    fn mul_inverse_pair_is_one() {
        let f = hr(&[(0, 1)], &[1]); // 1/(1-t)
        let g = HilbertRational::from_laurent(LaurentPoly::one_minus_t_pow(1));
        let p = f.mul(&g);
        assert!(p.equal(&HilbertRational::one()));
        assert_eq!(p.reduce().to_string(), "(1)");
    }

    #[test]
    fn add_matches_hypersurface_series() {
        // 2/(1-t)^3 - 1/(1-t)^2 = (1+t)/(1-t)^3 = (1-t^2)/(1-t)^4
        let a = hr(&[(0, 2)], &[1, 1, 1]);
        let b = hr(&[(0, 1)], &[1, 1]);
        let sum = a.sub(&b);
        let expected = hr(&[(0, 1), (2, -1)], &[1, 1, 1, 1]);
        let alt = hr(&[(0, 1), (1, 1)], &[1, 1, 1]);
        assert!(sum.equal(&expected));
        assert!(sum.equal(&alt));
    }

    #[test]
    fn div_cancels_into_hilbert_shape() {
        // (t^2/(1-t)^4) / (-t^2(1+t)/(1-t)^3) = -1/(1-t^2)
        let f = hr(&[(2, 1)], &[1, 1, 1, 1]);
        let g = hr(&[(2, -1), (3, -1)], &[1, 1, 1]);
        let q = f.div(&g).unwrap();
        let expected = hr(&[(0, -1)], &[2]);
        assert!(q.equal(&expected));
        // cross-multiplication oracle: q * g must reproduce f exactly
        assert_eq!(
            q.numerator().mul(&g.numerator()).mul(&f.denominator_poly()),
            f.numerator()
                .mul(&q.denominator_poly())
                .mul(&g.denominator_poly())
        );
        // the geometric merge makes the rendered denominator (1-t^2)
        assert_eq!(q.to_string(), "(-1) / (1-t^2)");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = hr(&[(0, 1)], &[1]);
        assert!(matches!(
            f.div(&HilbertRational::zero()),
            Err(RatFunError::DivisionByZero)
        ));
    }

    #[test]
    fn invert_variable_examples() {
        // 1/(1-t) -> -t/(1-t)
        let f = hr(&[(0, 1)], &[1]);
        let fi = f.invert_variable();
        assert!(fi.equal(&hr(&[(1, -1)], &[1])));

        // (1-t^2)/(1-t)^4 -> -t^2(1+t)/(1-t)^3, checked by expand-and-compare
        let g = hr(&[(0, 1), (2, -1)], &[1, 1, 1, 1]);
        let gi = g.invert_variable();
        let expected = hr(&[(2, -1), (3, -1)], &[1, 1, 1]);
        assert!(gi.equal(&expected));
        let e1 = gi.expand(Center::Zero, 10);
        let e2 = expected.expand(Center::Zero, 10);
        assert_eq!(e1.order(), e2.order());
        assert_eq!(e1.coefficients(), e2.coefficients());

        // constants are fixed
        let c = HilbertRational::constant(ratio(7, 3));
        assert!(c.invert_variable().equal(&c));
    }

    #[test]
    fn equality_examples() {
        let lhs = hr(&[(0, 2)], &[1, 1, 1]).sub(&hr(&[(0, 1)], &[1, 1]));
        assert!(lhs.equal(&hr(&[(0, 1), (2, -1)], &[1, 1, 1, 1])));
        assert!(!hr(&[(0, 1)], &[1]).equal(&hr(&[(0, 1)], &[2])));
        assert!(hr(&[(0, 1), (2, -1)], &[1, 1, 1, 1]).equal(&hr(&[(0, 1), (1, 1)], &[1, 1, 1])));
    }

    #[test]
    fn reduce_flags_canonical() {
        let f = hr(&[(0, 1), (2, -1)], &[1, 1, 1, 1]);
        assert!(!f.is_canonical());
        let r = f.reduce();
        assert!(r.is_canonical());
        assert_eq!(r.to_string(), "(1+t) / (1-t)^3");
        assert!(r.equal(&f));
    }

    #[test]
    fn laurent_polynomial_detection() {
        let f = hr(&[(-2, 1), (-1, -1)], &[]).mul(&hr(&[(0, 1)], &[]));
        assert!(f.is_laurent_polynomial());
        let g = hr(&[(0, 1)], &[1]);
        assert!(!g.is_laurent_polynomial());
        // (1-t^4)/(1-t^2) = 1 + t^2
        let h = HilbertRational::new(LaurentPoly::one_minus_t_pow(4), [2]);
        assert_eq!(
            h.as_laurent_polynomial().unwrap(),
            LaurentPoly::from_int_terms([(0, 1), (2, 1)])
        );
    }

    #[test]
    fn orders_at_one() {
        let f = hr(&[(0, 1)], &[1, 1]); // 1/(1-t)^2
        assert_eq!(f.order_at_one(), Some(-2));
        assert_eq!(f.pole_order_at_one(), Some(2));
        let g = hr(&[(0, 1), (2, -1)], &[1, 1, 1, 1]); // pole order 3
        assert_eq!(g.pole_order_at_one(), Some(3));
        assert_eq!(HilbertRational::zero().order_at_one(), None);
    }

    #[test]
    fn coefficient_extraction_at_one() {
        // H_R = (1-t^2)/(1-t)^4 = 2/(1-t)^3 - 1/(1-t)^2 with d = 3
        let h = hr(&[(0, 1), (2, -1)], &[1, 1, 1, 1]);
        assert_eq!(h.coefficient_at_one(3, 0), rat(2));
        assert_eq!(h.coefficient_at_one(3, 1), rat(-1));
        assert_eq!(h.coefficient_at_one(3, 2), rat(0));
        assert_eq!(h.coefficient_at_one(3, 5), rat(0));
    }

    #[test]
    fn display_shapes() {
        assert_eq!(hr(&[(0, 1)], &[1, 1]).to_string(), "(1) / (1-t)^2");
        assert_eq!(hr(&[(0, 1), (2, -1)], &[1, 1, 1, 1]).to_string(), "(1-t^2) / (1-t)^4");
        assert_eq!(HilbertRational::t_power(-2).to_string(), "(t^-2)");
        let with_residual = HilbertRational::from_fraction(
            LaurentPoly::one(),
            LaurentPoly::from_int_terms(vec![(0, 1), (1, 2)]).mul(&LaurentPoly::one_minus_t_pow(1)),
        )
        .unwrap();
        assert_eq!(with_residual.to_string(), "(1) / (1-t)(1+2t)");
    }
}
