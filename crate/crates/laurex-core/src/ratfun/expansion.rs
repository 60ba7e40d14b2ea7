use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::hilbert::HilbertRational;
use super::laurent::LaurentPoly;

/// Expansion center: a rational function is expanded around `t = 0`,
/// `t = 1` or `t = infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Center {
    Zero,
    One,
    Infinity,
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Center::Zero => write!(f, "0"),
            Center::One => write!(f, "1"),
            Center::Infinity => write!(f, "inf"),
        }
    }
}

/// A truncated Laurent expansion.
///
/// The coefficient at index `order + k` is `coeffs[k]`. Depending on the
/// center, index `j` refers to:
///
/// * `Center::Zero`: the coefficient of `t^j`;
/// * `Center::One`: the coefficient of `(1-t)^j` (note the sign convention
///   fixed by the `1-t` basis, so principal parts read off directly);
/// * `Center::Infinity`: the coefficient of `t^{-j}`.
///
/// The zero expansion is stored with no coefficients; its order is the
/// `None` sentinel (order plus infinity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentExpansion {
    center: Center,
    order: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentExpansion {
    pub fn zero(center: Center) -> Self {
        LaurentExpansion {
            center,
            order: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn from_parts(center: Center, order: i64, coeffs: Vec<BigRational>) -> Self {
        let mut e = LaurentExpansion {
            center,
            order,
            coeffs,
        };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        while self.coeffs.first().is_some_and(BigRational::is_zero) {
            self.coeffs.remove(0);
            self.order += 1;
        }
        if self.coeffs.is_empty() {
            self.order = 0;
        }
    }

    pub fn center(&self) -> Center {
        self.center
    }

    /// The order `inf { j | a_j != 0 }`; `None` for the zero expansion.
    pub fn order(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.order)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored coefficients.
    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient at index `j`, or `None` when `j` lies beyond the stored
    /// truncation window. Indices below the order are exact zeros.
    pub fn coeff_at(&self, j: i64) -> Option<BigRational> {
        if self.coeffs.is_empty() {
            return Some(BigRational::zero());
        }
        if j < self.order {
            return Some(BigRational::zero());
        }
        let k = (j - self.order) as usize;
        self.coeffs.get(k).cloned()
    }

    /// Exclusive upper end of the window of known indices; `None` when every
    /// index is known (zero expansion).
    pub fn known_through(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.order + self.coeffs.len() as i64)
        }
    }

    /// Truncated product; the result window is as long as both factors
    /// support.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.center, other.center, "centers must match");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.center);
        }
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = alloc::vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_parts(self.center, self.order + other.order, coeffs)
    }

    /// Truncated sum over the common window of known indices.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.center, other.center, "centers must match");
        let hi = match (self.known_through(), other.known_through()) {
            (None, None) => return Self::zero(self.center),
            (None, Some(h)) | (Some(h), None) => h,
            (Some(a), Some(b)) => a.min(b),
        };
        let lo = match (self.order(), other.order()) {
            (None, None) => return Self::zero(self.center),
            (None, Some(o)) | (Some(o), None) => o,
            (Some(a), Some(b)) => a.min(b),
        };
        let mut coeffs = Vec::new();
        for j in lo..hi {
            let a = self.coeff_at(j).unwrap_or_else(BigRational::zero);
            let b = other.coeff_at(j).unwrap_or_else(BigRational::zero);
            coeffs.push(a + b);
        }
        Self::from_parts(self.center, lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentExpansion {
            center: self.center,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// True when the two expansions agree on every index `j <= through`
    /// known to both.
    pub fn agrees_through(&self, other: &Self, through: i64) -> bool {
        assert_eq!(self.center, other.center, "centers must match");
        let lo = match (self.order(), other.order()) {
            (None, None) => return true,
            (None, Some(o)) | (Some(o), None) => o,
            (Some(a), Some(b)) => a.min(b),
        };
        for j in lo..=through {
            match (self.coeff_at(j), other.coeff_at(j)) {
                (Some(a), Some(b)) => {
                    if a != b {
                        return false;
                    }
                }
                // beyond a truncation window nothing can be compared
                _ => return true,
            }
        }
        true
    }
}

impl fmt::Display for LaurentExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = self.order + k as i64;
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = abs.is_one();
            match self.center {
                Center::Zero => {
                    if j == 0 {
                        write!(f, "{}", abs)?;
                    } else {
                        if !unit_coeff {
                            write!(f, "{}*", abs)?;
                        }
                        if j == 1 {
                            write!(f, "t")?;
                        } else {
                            write!(f, "t^{}", j)?;
                        }
                    }
                }
                Center::Infinity => {
                    if j == 0 {
                        write!(f, "{}", abs)?;
                    } else {
                        if !unit_coeff {
                            write!(f, "{}*", abs)?;
                        }
                        write!(f, "t^{}", -j)?;
                    }
                }
                Center::One => {
                    if j == 0 {
                        write!(f, "{}", abs)?;
                    } else if j < 0 {
                        write!(f, "{}/(1-t)^{}", abs, -j)?;
                    } else {
                        if !unit_coeff {
                            write!(f, "{}*", abs)?;
                        }
                        if j == 1 {
                            write!(f, "(1-t)")?;
                        } else {
                            write!(f, "(1-t)^{}", j)?;
                        }
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        let hi = self.order + self.coeffs.len() as i64;
        match self.center {
            Center::Zero => write!(f, " + O(t^{})", hi),
            Center::Infinity => write!(f, " + O(t^{})", -hi),
            Center::One => write!(f, " + O((1-t)^{})", hi),
        }
    }
}

/// Expansion entry point used by [`HilbertRational::expand`].
pub(super) fn expand_hilbert(
    h: &HilbertRational,
    center: Center,
    terms: usize,
) -> LaurentExpansion {
    assert!(terms >= 1, "expansion needs at least one term");
    if h.is_zero() {
        return LaurentExpansion::zero(center);
    }
    let num = h.numerator().clone();
    let den = h.denominator_poly();
    match center {
        Center::Zero => expand_fraction(center, &num, &den, terms),
        Center::Infinity => expand_fraction(center, &num.invert_var(), &den.invert_var(), terms),
        Center::One => {
            // substitute t = 1 - s and expand in s, whose powers are the
            // (1-t)^j basis directly
            let shift = num.min_exp().unwrap_or(0).min(den.min_exp().unwrap_or(0)).min(0);
            let p = substitute_one_minus(&num.shift(-shift));
            let q = substitute_one_minus(&den.shift(-shift));
            expand_dense(center, p, q, terms)
        }
    }
}

fn expand_fraction(
    center: Center,
    num: &LaurentPoly,
    den: &LaurentPoly,
    terms: usize,
) -> LaurentExpansion {
    let (off_n, n) = num.to_dense();
    let (off_d, d) = den.to_dense();
    let coeffs = series_divide(&n, &d, terms);
    LaurentExpansion::from_parts(center, off_n - off_d, coeffs)
}

fn expand_dense(
    center: Center,
    num: Vec<BigRational>,
    den: Vec<BigRational>,
    terms: usize,
) -> LaurentExpansion {
    let tn = num.iter().take_while(|c| c.is_zero()).count();
    let td = den.iter().take_while(|c| c.is_zero()).count();
    let coeffs = series_divide(&num[tn..], &den[td..], terms);
    LaurentExpansion::from_parts(center, tn as i64 - td as i64, coeffs)
}

/// Power series division with `den[0] != 0`.
fn series_divide(num: &[BigRational], den: &[BigRational], terms: usize) -> Vec<BigRational> {
    assert!(!den.is_empty() && !den[0].is_zero(), "series division by higher-order term");
    let lead_inv = BigRational::one() / den[0].clone();
    let mut out: Vec<BigRational> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = num.get(k).cloned().unwrap_or_else(BigRational::zero);
        for j in 1..=k.min(den.len() - 1) {
            acc -= &den[j] * &out[k - j];
        }
        out.push(acc * &lead_inv);
    }
    out
}

/// Dense coefficients of `p(1 - s)` in `s`, for a polynomial `p` with
/// non-negative exponents.
fn substitute_one_minus(p: &LaurentPoly) -> Vec<BigRational> {
    let deg = p.max_exp().unwrap_or(0);
    assert!(p.min_exp().unwrap_or(0) >= 0, "polynomial input required");
    let mut out = alloc::vec![BigRational::zero(); (deg + 1) as usize];
    for (e, c) in p.terms() {
        // (1 - s)^e = sum_k C(e, k) (-1)^k s^k
        let e = e as u64;
        let mut binom = BigInt::one();
        for k in 0..=e {
            let signed = if k % 2 == 0 { binom.clone() } else { -binom.clone() };
            out[k as usize] += c * BigRational::from_integer(signed);
            if k < e {
                binom = binom * BigInt::from(e - k) / BigInt::from(k + 1);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::rat;
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
    fn inverse_square_at_one_counts_up() {
        // 1/t^2 around 1 expands as sum_j (j+1) (1-t)^j
        let f = hr(&[(-2, 1)], &[]);
        let e = f.expand(Center::One, 8);
        assert_eq!(e.order(), Some(0));
        for j in 0..8 {
            assert_eq!(e.coeff_at(j).unwrap(), rat(j + 1));
        }
    }

    #[test]
    fn geometric_series_at_zero() {
        let f = hr(&[(0, 1)], &[1]);
        let e = f.expand(Center::Zero, 6);
        assert_eq!(e.order(), Some(0));
        assert!(e.coefficients().iter().all(|c| *c == rat(1)));
    }

    #[test]
    fn geometric_series_at_infinity() {
        // 1/(1-t) = -t^{-1} - t^{-2} - ... around infinity, order 1
        let f = hr(&[(0, 1)], &[1]);
        let e = f.expand(Center::Infinity, 5);
        assert_eq!(e.order(), Some(1));
        assert!(e.coefficients().iter().all(|c| *c == rat(-1)));
    }

    #[test]
    fn orders_of_poles_and_monomials() {
        let f = hr(&[(0, 1)], &[1, 1, 1]);
        assert_eq!(f.expand(Center::One, 4).order(), Some(-3));

        let g = hr(&[(-2, 1)], &[]);
        assert_eq!(g.expand(Center::Infinity, 3).order(), Some(2));

        // H_M (1-t)^2 at One has order 0 when H_M = 1/(1-t)^2
        let h = hr(&[(0, 1)], &[1, 1])
            .mul(&HilbertRational::from_laurent(LaurentPoly::one_minus_t_pow(1).pow(2)));
        assert_eq!(h.expand(Center::One, 4).order(), Some(0));

        assert_eq!(HilbertRational::zero().expand(Center::Zero, 4).order(), None);
    }

    #[test]
    fn hypersurface_series_principal_part() {
        // (1-t^2)/(1-t)^4 = 2/(1-t)^3 - 1/(1-t)^2
        let f = hr(&[(0, 1), (2, -1)], &[1, 1, 1, 1]);
        let e = f.expand(Center::One, 6);
        assert_eq!(e.order(), Some(-3));
        assert_eq!(e.coeff_at(-3).unwrap(), rat(2));
        assert_eq!(e.coeff_at(-2).unwrap(), rat(-1));
        for j in -1..3 {
            assert_eq!(e.coeff_at(j).unwrap(), rat(0));
        }
        assert_eq!(e.to_string(), "2/(1-t)^3 - 1/(1-t)^2 + O((1-t)^3)");
    }

    #[test]
    fn truncated_product_matches_product_expansion() {
        let f = hr(&[(0, 1), (1, 2)], &[1, 2]);
        let g = hr(&[(-1, 3), (2, -1)], &[1]);
        for center in [Center::Zero, Center::One, Center::Infinity] {
            let ef = f.expand(center, 10);
            let eg = g.expand(center, 10);
            let eprod = f.mul(&g).expand(center, 10);
            let tprod = ef.mul(&eg);
            let upto = tprod.known_through().unwrap() - 1;
            assert!(eprod.agrees_through(&tprod, upto), "center {center}");
        }
    }

    #[test]
    fn infinity_mirrors_inverted_variable_at_zero() {
        let f = hr(&[(0, 1), (3, -2)], &[1, 1, 2]);
        let at_inf = f.expand(Center::Infinity, 12);
        let mirrored = f.invert_variable().expand(Center::Zero, 12);
        assert_eq!(at_inf.order(), mirrored.order());
        assert_eq!(at_inf.coefficients(), mirrored.coefficients());
    }

    #[test]
    fn determinism() {
        let f = hr(&[(0, 5), (1, -1)], &[2, 3]);
        let a = f.expand(Center::One, 9);
        let b = f.expand(Center::One, 9);
        assert_eq!(a, b);
    }

    #[test]
    fn add_tracks_windows() {
        let f = hr(&[(0, 1)], &[1]);
        let e1 = f.expand(Center::Zero, 5);
        let e2 = f.neg().expand(Center::Zero, 8);
        let s = e1.add(&e2);
        assert!(s.is_zero());
        let vec_sum = e1.add(&f.expand(Center::Zero, 3));
        assert_eq!(vec_sum.coefficients(), vec![rat(2), rat(2), rat(2)].as_slice());
    }
}
