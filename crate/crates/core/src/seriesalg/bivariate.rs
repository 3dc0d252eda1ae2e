use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{tpoly, Coeff, Series};
use crate::error::{Error, Result};

/// A power series in `z` whose `z^n` coefficient is a polynomial in the
/// catalytic variable `t`, known modulo `z^(order+1)`.
///
/// Rows are dense in `t` (low degree first, trailing zeros trimmed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries<C> {
    rows: Vec<Vec<C>>,
}

impl<C: Coeff> BiSeries<C> {
    pub fn from_rows(mut rows: Vec<Vec<C>>) -> Self {
        assert!(!rows.is_empty(), "a series needs at least its constant term");
        rows.iter_mut().for_each(tpoly::trim);
        BiSeries { rows }
    }

    pub fn zero(order: usize) -> Self {
        BiSeries { rows: vec![Vec::new(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        BiSeries::monomial(0, 0, C::one(), order)
    }

    /// `c·z^n·t^k`
    pub fn monomial(n: usize, k: usize, c: C, order: usize) -> Self {
        let mut s = BiSeries::zero(order);
        if n <= order && !c.is_zero() {
            let mut row = vec![C::zero(); k + 1];
            row[k] = c;
            s.rows[n] = row;
        }
        s
    }

    pub fn z(order: usize) -> Self {
        BiSeries::monomial(1, 0, C::one(), order)
    }

    pub fn t(order: usize) -> Self {
        BiSeries::monomial(0, 1, C::one(), order)
    }

    /// Embeds a univariate series as a `t`-free bivariate series.
    pub fn from_series(s: &Series<C>) -> Self {
        let rows = s.coeffs().iter().map(|c| if c.is_zero() { Vec::new() } else { vec![c.clone()] }).collect();
        BiSeries { rows }
    }

    /// A polynomial in `t` (low degree first) as a `z`-constant series.
    pub fn from_t_poly(poly: &[C], order: usize) -> Self {
        let mut s = BiSeries::zero(order);
        s.rows[0] = poly.to_vec();
        tpoly::trim(&mut s.rows[0]);
        s
    }

    /// `1/(1 - t·z) = Σ tⁿzⁿ`.
    pub fn geometric_tz(order: usize) -> Self {
        let rows = (0..=order)
            .map(|n| {
                let mut r = vec![C::zero(); n + 1];
                r[n] = C::one();
                r
            })
            .collect();
        BiSeries { rows }
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[C] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<C>] {
        &self.rows
    }

    pub fn coeff(&self, n: usize, k: usize) -> C {
        self.rows[n].get(k).cloned().unwrap_or_else(C::zero)
    }

    /// Degree in `t` of the `z^n` coefficient (`None` for a zero row).
    pub fn t_degree(&self, n: usize) -> Option<usize> {
        self.rows[n].len().checked_sub(1)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        BiSeries { rows: self.rows[..=order].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// Index of the first nonzero row.
    pub fn valuation(&self) -> Option<usize> {
        self.rows.iter().position(|r| !r.is_empty())
    }

    /// The coefficient of `t^k`, as a series in `z`.
    pub fn column(&self, k: usize) -> Series<C> {
        Series::from_coeffs(self.rows.iter().map(|r| r.get(k).cloned().unwrap_or_else(C::zero)).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        BiSeries { rows: self.rows.iter().map(|r| tpoly::scale(r, c)).collect() }
    }

    /// Multiplication by `z^k`, keeping the truncation order.
    pub fn shift_z(&self, k: usize) -> Self {
        let mut out = BiSeries::zero(self.order());
        for i in k..=self.order() {
            out.rows[i] = self.rows[i - k].clone();
        }
        out
    }

    /// Division by `z^k`; the first `k` rows must vanish and the result
    /// loses `k` orders.
    pub fn unshift_z(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.rows[..k].iter().any(|r| !r.is_empty()) {
            return Err(Error::NotDivisible(format!("series is not divisible by z^{k}")));
        }
        Ok(BiSeries { rows: self.rows[k..].to_vec() })
    }

    pub fn mul_t_poly(&self, p: &[C]) -> Self {
        BiSeries { rows: self.rows.iter().map(|r| tpoly::mul(r, p)).collect() }
    }

    pub fn mul_series(&self, s: &Series<C>) -> Self {
        self.mul_bi(&BiSeries::from_series(s))
    }

    fn single_row(&self) -> Option<usize> {
        let mut nz = self.rows.iter().enumerate().filter(|(_, r)| !r.is_empty());
        let first = nz.next()?;
        nz.next().is_none().then_some(first.0)
    }

    pub fn mul_bi(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = BiSeries::zero(order);
        if let Some(k) = other.single_row() {
            for i in k..=order {
                out.rows[i] = tpoly::mul(&self.rows[i - k], &other.rows[k]);
            }
            return out;
        }
        if let Some(k) = self.single_row() {
            for i in k..=order {
                out.rows[i] = tpoly::mul(&self.rows[k], &other.rows[i - k]);
            }
            return out;
        }
        for i in 0..=order {
            if self.rows[i].is_empty() {
                continue;
            }
            for j in 0..=order - i {
                tpoly::add_mul_into(&mut out.rows[i + j], &self.rows[i], &other.rows[j]);
            }
        }
        out
    }

    /// Inverse in `C[t][[z]]`; the constant row must be a unit constant.
    pub fn inverse(&self) -> Result<Self> {
        let r0 = &self.rows[0];
        let one = C::one();
        let inv0 = match r0.as_slice() {
            [a0] => one.div_exact(a0).filter(|i| i.mul_ref(a0) == one),
            _ => None,
        }
        .ok_or_else(|| Error::NotInvertible(format!("{r0:?}")))?;
        let order = self.order();
        let mut out = BiSeries::zero(order);
        out.rows[0] = vec![inv0.clone()];
        for n in 1..=order {
            let mut acc = Vec::new();
            for k in 1..=n {
                tpoly::add_mul_into(&mut acc, &self.rows[k], &out.rows[n - k]);
            }
            out.rows[n] = tpoly::scale(&acc, &inv0.neg_ref());
        }
        Ok(out)
    }

    /// Exact quotient `self / den` computed row by row. The constant row of
    /// `den` need not be a unit; each step must divide exactly in `C[t]`.
    pub fn div_exact(&self, den: &Self) -> Result<Self> {
        let order = self.order().min(den.order());
        let d0 = &den.rows[0];
        if d0.is_empty() {
            return Err(Error::NotDivisible("denominator has zero constant row".into()));
        }
        let mut out = BiSeries::zero(order);
        for n in 0..=order {
            let mut num = self.rows[n].clone();
            for k in 1..=n {
                if !den.rows[k].is_empty() && !out.rows[n - k].is_empty() {
                    let prod = tpoly::mul(&den.rows[k], &out.rows[n - k]);
                    tpoly::sub_into(&mut num, &prod);
                }
            }
            out.rows[n] =
                tpoly::div_exact(&num, d0).ok_or_else(|| Error::NotDivisible(format!("row {n} is not divisible")))?;
        }
        Ok(out)
    }

    /// `B(z, 1)`.
    pub fn subst_t_one(&self) -> Series<C> {
        Series::from_coeffs(self.rows.iter().map(|r| tpoly::sum(r)).collect())
    }

    /// `B(z, v(z))`: each `zⁿtᵏ` contributes `zⁿ·v(z)ᵏ`, so the result is
    /// exact up to `min(order(B), order(v))` whatever the constant term of
    /// `v` is.
    pub fn subst_t(&self, v: &Series<C>) -> Series<C> {
        let order = self.order().min(v.order());
        let max_deg = self.rows[..=order].iter().map(Vec::len).max().unwrap_or(0);
        let v = v.truncate(order);
        let mut powers = Vec::with_capacity(max_deg);
        let mut p = Series::one(order);
        for _ in 0..max_deg {
            powers.push(p.clone());
            p = p.mul_series(&v);
        }
        let mut acc: Vec<C> = vec![C::zero(); order + 1];
        for n in 0..=order {
            for (k, c) in self.rows[n].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for m in 0..=order - n {
                    acc[n + m].add_mul(c, powers[k].coeff(m));
                }
            }
        }
        Series::from_coeffs(acc)
    }

    /// `∂B/∂t` evaluated at `t = 1`.
    pub fn deriv_t_at_1(&self) -> Series<C> {
        Series::from_coeffs(self.rows.iter().map(|r| tpoly::deriv_at_one(r)).collect())
    }

    /// `∂B/∂t` as a bivariate series.
    pub fn deriv_t(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut d: Vec<C> =
                    r.iter().enumerate().skip(1).map(|(k, c)| c.mul_ref(&C::from_i64(k as i64))).collect();
                tpoly::trim(&mut d);
                d
            })
            .collect();
        BiSeries { rows }
    }

    /// Evaluation at a constant `t = c`.
    pub fn eval_t(&self, c: &C) -> Series<C> {
        Series::from_coeffs(self.rows.iter().map(|r| tpoly::eval(r, c)).collect())
    }

    pub fn to_rational(&self) -> BiSeries<BigRational> {
        BiSeries { rows: self.rows.iter().map(|r| r.iter().map(|c| c.to_rational()).collect()).collect() }
    }

    /// Applies a coefficient map row-wise; `f` must send zero to zero.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> BiSeries<D> {
        BiSeries::from_rows(self.rows.iter().map(|r| r.iter().map(&f).collect()).collect())
    }

    /// All coefficients satisfy `pred`.
    pub fn all_coeffs(&self, pred: impl Fn(&C) -> bool) -> bool {
        self.rows.iter().flatten().all(pred)
    }
}

impl BiSeries<BigRational> {
    pub fn to_integer(&self) -> Option<BiSeries<BigInt>> {
        let rows: Option<Vec<Vec<BigInt>>> =
            self.rows.iter().map(|r| r.iter().map(super::coeff::rational_to_integer).collect()).collect();
        rows.map(|rows| BiSeries { rows })
    }
}

impl<C: Coeff> Add for &BiSeries<C> {
    type Output = BiSeries<C>;
    fn add(self, rhs: &BiSeries<C>) -> BiSeries<C> {
        let order = self.order().min(rhs.order());
        let rows = (0..=order)
            .map(|i| {
                let mut r = self.rows[i].clone();
                tpoly::add_into(&mut r, &rhs.rows[i]);
                r
            })
            .collect();
        BiSeries { rows }
    }
}

impl<C: Coeff> Sub for &BiSeries<C> {
    type Output = BiSeries<C>;
    fn sub(self, rhs: &BiSeries<C>) -> BiSeries<C> {
        let order = self.order().min(rhs.order());
        let rows = (0..=order)
            .map(|i| {
                let mut r = self.rows[i].clone();
                tpoly::sub_into(&mut r, &rhs.rows[i]);
                r
            })
            .collect();
        BiSeries { rows }
    }
}

impl<C: Coeff> Mul for &BiSeries<C> {
    type Output = BiSeries<C>;
    fn mul(self, rhs: &BiSeries<C>) -> BiSeries<C> {
        self.mul_bi(rhs)
    }
}

impl<C: Coeff> Neg for &BiSeries<C> {
    type Output = BiSeries<C>;
    fn neg(self) -> BiSeries<C> {
        BiSeries { rows: self.rows.iter().map(|r| r.iter().map(|c| c.neg_ref()).collect()).collect() }
    }
}

impl<C: Coeff> fmt::Display for BiSeries<C> {
    /// One line per order of `z`: the coefficients of `t^0..t^max(n, deg)`
    /// separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, r) in self.rows.iter().enumerate() {
            let width = r.len().max(n + 1);
            let zero = C::zero();
            let parts: Vec<String> = (0..width).map(|k| r.get(k).unwrap_or(&zero).to_string()).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type B = BiSeries<BigInt>;

    #[test]
    fn inverse_of_one_minus_tz() {
        let one_minus_tz = &B::one(8) - &B::monomial(1, 1, BigInt::from(1), 8);
        assert_eq!(one_minus_tz.inverse().unwrap(), B::geometric_tz(8));
    }

    #[test]
    fn substitutions_of_geometric_tz() {
        let g = B::geometric_tz(9);
        assert_eq!(g.subst_t_one(), Series::geometric_power(1, 9));
        let d = g.deriv_t_at_1();
        assert!(d.coeffs().iter().enumerate().all(|(n, c)| *c == BigInt::from(n)));
        assert!(B::one(5).deriv_t_at_1().is_zero());
        // subst_t with the constant series 1 agrees with subst_t_one
        assert_eq!(g.subst_t(&Series::one(9)), g.subst_t_one());
    }

    #[test]
    fn exact_row_division() {
        let a = B::from_rows(vec![vec![1.into(), 2.into()], vec![3.into()], vec![0.into(), 1.into()]]);
        let d = B::from_rows(vec![vec![1.into(), (-1).into()], vec![0.into(), 1.into()], vec![]]);
        let prod = &a * &d;
        assert_eq!(prod.div_exact(&d).unwrap(), a);
    }

    #[test]
    fn display_pads_to_row_index() {
        let g = B::geometric_tz(2);
        assert_eq!(g.to_string(), "1\n0 1\n0 0 1\n");
    }
}
