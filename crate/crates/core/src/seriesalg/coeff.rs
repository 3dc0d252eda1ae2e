use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact coefficient ring for series and polynomial arithmetic.
///
/// The by-reference helpers keep the hot convolution loops free of clones.
pub trait Coeff: Clone + PartialEq + Debug + Display + FromStr + Zero + One + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: BigInt) -> Self;
    fn to_rational(&self) -> BigRational;

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self);
    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn add_ref(&mut self, other: &Self);
    fn sub_ref(&mut self, other: &Self);
    fn neg_ref(&self) -> Self;
    /// Exact quotient, `None` if `other` does not divide `self` in the ring.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn is_negative(&self) -> bool;
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: BigInt) -> Self {
        v
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self += a * b;
        }
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self -= a * b;
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: BigInt) -> Self {
        BigRational::from_integer(v)
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self += a * b;
        }
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self -= a * b;
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Converts a rational to an integer when its denominator is 1.
pub fn rational_to_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
