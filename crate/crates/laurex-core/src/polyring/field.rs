use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficient field abstraction. The two provided instances are the
/// rationals ([`BigRational`]) and prime fields [`Fp`]; every algorithm in
/// the crate is exact over either.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Image of a rational number, `None` when its denominator vanishes in
    /// the field.
    fn from_rational(q: &BigRational) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
            .expect("integers map into every field")
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(<BigRational as One>::one() / self.clone())
        }
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

/// The prime field with `P` elements. `P` must be prime; inversion uses
/// Fermat's little theorem.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        let p = P as i64;
        let r = ((v % p) + p) % p;
        Fp(r as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1 % P)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % P)
    }

    fn sub(&self, other: &Self) -> Self {
        Fp((self.0 + P - other.0) % P)
    }

    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }

    fn mul(&self, other: &Self) -> Self {
        Fp(((u128::from(self.0) * u128::from(other.0)) % u128::from(P)) as u64)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        let p = num_bigint::BigInt::from(P);
        let n = ((q.numer() % &p) + &p) % &p;
        let d = ((q.denom() % &p) + &p) % &p;
        let n: u64 = n.try_into().ok()?;
        let d: u64 = d.try_into().ok()?;
        Fp::<P>(d).inv().map(|di| Fp(n).mul(&di))
    }
}
