use std::collections::BTreeMap;

use num_traits::Zero;

use super::{BiSeries, Coeff, MPoly, Series};
use crate::error::{Error, Result};

/// A value that can be substituted for an indeterminate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesValue<C> {
    Uni(Series<C>),
    Bi(BiSeries<C>),
}

impl<C: Coeff> SeriesValue<C> {
    pub fn order(&self) -> usize {
        match self {
            SeriesValue::Uni(s) => s.order(),
            SeriesValue::Bi(b) => b.order(),
        }
    }

    fn to_bi(&self) -> BiSeries<C> {
        match self {
            SeriesValue::Uni(s) => BiSeries::from_series(s),
            SeriesValue::Bi(b) => b.clone(),
        }
    }

    fn term_count(&self) -> usize {
        match self {
            SeriesValue::Uni(s) => s.coeffs().iter().filter(|c| !c.is_zero()).count(),
            SeriesValue::Bi(b) => b.rows().iter().flatten().filter(|c| !c.is_zero()).count(),
        }
    }

    /// Index of the first nonzero coefficient (row, for bivariate values).
    pub fn valuation(&self) -> Option<usize> {
        match self {
            SeriesValue::Uni(s) => s.valuation(),
            SeriesValue::Bi(b) => b.valuation(),
        }
    }

    pub fn into_uni(self) -> Option<Series<C>> {
        match self {
            SeriesValue::Uni(s) => Some(s),
            SeriesValue::Bi(_) => None,
        }
    }

    pub fn into_bi(self) -> BiSeries<C> {
        match self {
            SeriesValue::Uni(s) => BiSeries::from_series(&s),
            SeriesValue::Bi(b) => b,
        }
    }
}

impl<C: Coeff> From<Series<C>> for SeriesValue<C> {
    fn from(s: Series<C>) -> Self {
        SeriesValue::Uni(s)
    }
}

impl<C: Coeff> From<BiSeries<C>> for SeriesValue<C> {
    fn from(b: BiSeries<C>) -> Self {
        SeriesValue::Bi(b)
    }
}

trait Ring: Clone {
    type C: Coeff;
    fn constant(c: Self::C, order: usize) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl<C: Coeff> Ring for Series<C> {
    type C = C;
    fn constant(c: C, order: usize) -> Self {
        Series::constant(c, order)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_series(other)
    }
}

impl<C: Coeff> Ring for BiSeries<C> {
    type C = C;
    fn constant(c: C, order: usize) -> Self {
        BiSeries::monomial(0, 0, c, order)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_bi(other)
    }
}

/// Evaluates `poly` with every indeterminate replaced by a truncated series.
///
/// The result is bivariate as soon as one assigned value is, and its order
/// is the minimum over the values of the indeterminates that occur.
pub fn poly_eval_series<C: Coeff>(
    poly: &MPoly,
    assignment: &BTreeMap<String, SeriesValue<C>>,
) -> Result<SeriesValue<C>> {
    let mut used = Vec::new();
    for v in poly.vars() {
        let value = assignment.get(v).ok_or_else(|| Error::MissingAssignment(v.clone()))?;
        used.push((v.as_str(), value));
    }
    let order = used
        .iter()
        .map(|(_, v)| v.order())
        .min()
        .or_else(|| assignment.values().map(SeriesValue::order).min())
        .ok_or_else(|| Error::InvalidArgument("empty assignment for a constant polynomial".into()))?;
    // Dense values outermost: each one costs a full multiplication per
    // Horner step, while sparse ones (z, t) reduce to shifts.
    used.sort_by_key(|(name, v)| (std::cmp::Reverse(v.term_count()), *name));
    let bivariate = used.iter().any(|(_, v)| matches!(v, SeriesValue::Bi(_)));
    if bivariate {
        let vals: Vec<(&str, BiSeries<C>)> = used.iter().map(|(n, v)| (*n, v.to_bi().truncate(order))).collect();
        Ok(SeriesValue::Bi(horner(poly, &vals, order)))
    } else {
        let vals: Vec<(&str, Series<C>)> = used
            .iter()
            .map(|(n, v)| match v {
                SeriesValue::Uni(s) => (*n, s.truncate(order)),
                SeriesValue::Bi(_) => unreachable!(),
            })
            .collect();
        Ok(SeriesValue::Uni(horner(poly, &vals, order)))
    }
}

fn horner<R: Ring>(poly: &MPoly, vals: &[(&str, R)], order: usize) -> R {
    let Some(((name, x), rest)) = vals.split_first() else {
        let c = poly.terms().next().map(|(c, _)| c.clone()).unwrap_or_default();
        return R::constant(R::C::from_bigint(c), order);
    };
    let coeffs = poly.coefficients_in(name);
    let mut acc = R::constant(R::C::zero(), order);
    for (i, c) in coeffs.iter().enumerate().rev() {
        if !c.is_zero() {
            acc = acc.add(&horner(c, rest, order));
        }
        if i > 0 {
            acc = acc.mul(x);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn y_minus_x_vanishes() {
        let p: MPoly = "1:y -1:x".parse().unwrap();
        let s = Series::<BigInt>::from_i64s(6, &[1, 3, 0, 7]);
        let mut a = BTreeMap::new();
        a.insert("x".to_string(), SeriesValue::Uni(s.clone()));
        a.insert("y".to_string(), SeriesValue::Uni(s));
        let r = poly_eval_series(&p, &a).unwrap();
        assert_eq!(r.valuation(), None);
    }

    #[test]
    fn missing_assignment() {
        let p: MPoly = "1:y -1:x".parse().unwrap();
        let mut a = BTreeMap::new();
        a.insert("x".to_string(), SeriesValue::Uni(Series::<BigInt>::z(4)));
        assert_eq!(poly_eval_series(&p, &a), Err(Error::MissingAssignment("y".into())));
    }

    #[test]
    fn promotes_to_bivariate() {
        // (1 - t z)·G with G = 1/(1 - t z) is 1
        let p: MPoly = "1:G -1:G*t*z".parse().unwrap();
        let mut a = BTreeMap::new();
        a.insert("G".to_string(), SeriesValue::Bi(BiSeries::<BigInt>::geometric_tz(8)));
        a.insert("t".to_string(), SeriesValue::Bi(BiSeries::t(8)));
        a.insert("z".to_string(), SeriesValue::Uni(Series::z(8)));
        let r = poly_eval_series(&p, &a).unwrap().into_bi();
        assert_eq!(r, BiSeries::one(8));
    }
}
