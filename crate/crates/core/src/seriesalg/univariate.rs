use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Coeff;
use crate::error::{Error, Result};

/// A power series in `z` known modulo `z^(order+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Series<C> {
    /// Series with the given coefficients `a_0..a_N`; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        Series { coeffs }
    }

    pub fn from_i64s(order: usize, values: &[i64]) -> Self {
        let mut s = Series::zero(order);
        for (i, v) in values.iter().enumerate().take(order + 1) {
            s.coeffs[i] = C::from_i64(*v);
        }
        s
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Series::constant(C::one(), order)
    }

    /// `c·z^k`
    pub fn monomial(k: usize, c: C, order: usize) -> Self {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        Series::monomial(1, C::one(), order)
    }

    /// `1/(1-z)^j`, whose `z^r` coefficient is `C(r+j-1, r)`.
    pub fn geometric_power(j: usize, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        if j == 0 {
            coeffs[0] = C::one();
            return Series { coeffs };
        }
        let mut c = BigInt::from(1);
        coeffs[0] = C::one();
        for (r, slot) in coeffs.iter_mut().enumerate().skip(1) {
            c = c * BigInt::from(r + j - 1) / BigInt::from(r);
            *slot = C::from_bigint(c.clone());
        }
        Series { coeffs }
    }

    /// Expansion of a polynomial in `z` given low degree first.
    pub fn from_poly(poly: &[C], order: usize) -> Self {
        let mut s = Series::zero(order);
        for (i, c) in poly.iter().enumerate().take(order + 1) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    fn single_term(&self) -> Option<(usize, &C)> {
        let mut found = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((i, c));
            }
        }
        found
    }

    pub fn scale(&self, c: &C) -> Self {
        Series { coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect() }
    }

    /// Multiplication by `z^k`, keeping the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Series::zero(self.order());
        for i in k..=self.order() {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    pub fn mul_series(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Series::zero(order);
        if let Some((k, c)) = other.single_term() {
            for i in k..=order {
                out.coeffs[i] = self.coeffs[i - k].mul_ref(c);
            }
            return out;
        }
        if let Some((k, c)) = self.single_term() {
            for i in k..=order {
                out.coeffs[i] = other.coeffs[i - k].mul_ref(c);
            }
            return out;
        }
        for i in 0..=order {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in 0..=order - i {
                out.coeffs[i + j].add_mul(a, &other.coeffs[j]);
            }
        }
        out
    }

    /// Multiplicative inverse; requires a constant term that is a unit of
    /// the coefficient ring.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        let one = C::one();
        let inv0 =
            one.div_exact(a0).filter(|i| i.mul_ref(a0) == one).ok_or_else(|| Error::NotInvertible(a0.to_string()))?;
        let order = self.order();
        let mut out = Series::zero(order);
        out.coeffs[0] = inv0.clone();
        for n in 1..=order {
            let mut acc = C::zero();
            for k in 1..=n {
                acc.add_mul(&self.coeffs[k], &out.coeffs[n - k]);
            }
            out.coeffs[n] = acc.neg_ref().mul_ref(&inv0);
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Series::one(self.order());
        for _ in 0..e {
            acc = acc.mul_series(self);
        }
        acc
    }

    /// Composition `self(g(z))` for `g` without constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument("composition needs an inner series without constant term".into()));
        }
        let order = self.order().min(g.order());
        let g = g.truncate(order);
        let mut acc = Series::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = acc.mul_series(&g);
            acc.coeffs[0].add_ref(c);
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let order = self.order();
        let mut out = Series::zero(order.saturating_sub(1));
        for i in 1..=order {
            out.coeffs[i - 1] = self.coeffs[i].mul_ref(&C::from_i64(i as i64));
        }
        out
    }

    pub fn to_rational(&self) -> Series<BigRational> {
        Series { coeffs: self.coeffs.iter().map(|c| c.to_rational()).collect() }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl Series<BigRational> {
    /// Integer coefficients, or `None` if a denominator does not clear.
    pub fn to_integer(&self) -> Option<Series<BigInt>> {
        let coeffs: Option<Vec<BigInt>> = self.coeffs.iter().map(super::coeff::rational_to_integer).collect();
        coeffs.map(|coeffs| Series { coeffs })
    }
}

impl<C: Coeff> Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: &Series<C>) -> Series<C> {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| {
                let mut c = self.coeffs[i].clone();
                c.add_ref(&rhs.coeffs[i]);
                c
            })
            .collect();
        Series { coeffs }
    }
}

impl<C: Coeff> Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: &Series<C>) -> Series<C> {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| {
                let mut c = self.coeffs[i].clone();
                c.sub_ref(&rhs.coeffs[i]);
                c
            })
            .collect();
        Series { coeffs }
    }
}

impl<C: Coeff> Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: &Series<C>) -> Series<C> {
        self.mul_series(rhs)
    }
}

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series { coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }
}

impl<C: Coeff> fmt::Display for Series<C> {
    /// One line per order of `z`, holding that single coefficient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.coeffs {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = Series<BigInt>;

    #[test]
    fn geometric_inverse() {
        let one_minus_z = S::from_i64s(10, &[1, -1]);
        let inv = one_minus_z.inverse().unwrap();
        assert!(inv.coeffs().iter().all(|c| *c == BigInt::from(1)));
        assert_eq!(inv, S::geometric_power(1, 10));
    }

    #[test]
    fn non_unit_inverse_fails() {
        assert!(S::from_i64s(5, &[2, 1]).inverse().is_err());
        assert!(S::from_i64s(5, &[0, 1]).inverse().is_err());
        let q = Series::<BigRational>::from_i64s(5, &[2, 1]);
        assert!(q.inverse().is_ok());
    }

    #[test]
    fn truncation_is_min_of_operands() {
        let a = S::from_i64s(10, &[1, 2, 3]);
        let b = S::from_i64s(4, &[1, 1]);
        assert_eq!((&a + &b).order(), 4);
        assert_eq!((&a * &b).order(), 4);
        assert_eq!((&a - &b).order(), 4);
    }

    #[test]
    fn binomial_powers() {
        let g = S::geometric_power(3, 6);
        let direct = S::geometric_power(1, 6).pow(3);
        assert_eq!(g, direct);
    }

    #[test]
    fn composition() {
        // 1/(1-z) composed with z/(1-z) is (1-z)/(1-2z)
        let inner = &S::z(8) * &S::geometric_power(1, 8);
        let out = S::geometric_power(1, 8).compose(&inner).unwrap();
        let expect = &S::from_i64s(8, &[1, -1]) * &S::from_i64s(8, &[1, -2]).inverse().unwrap();
        assert_eq!(out, expect);
    }
}
