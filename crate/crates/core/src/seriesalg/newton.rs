use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::{poly_eval_series, MPoly, Series, SeriesValue};
use crate::error::{Error, Result};

/// The power series `t(z)` with `t(0) = t0` and `P(z, t(z)) = O(z^(order+1))`.
///
/// `t0` must be a simple root of `P(0, t)`; Newton's iteration then doubles
/// the number of correct coefficients at every step.
pub fn newton_series_root(
    p: &MPoly,
    zvar: &str,
    tvar: &str,
    t0: &BigRational,
    order: usize,
) -> Result<Series<BigRational>> {
    if let Some(v) = p.vars().iter().find(|v| *v != zvar && *v != tvar) {
        return Err(Error::MissingAssignment(v.clone()));
    }
    let at_origin = |q: &MPoly| -> Result<BigRational> {
        let mut vals = BTreeMap::new();
        vals.insert(zvar.to_string(), BigRational::zero());
        vals.insert(tvar.to_string(), t0.clone());
        q.eval_rational(&vals)
    };
    let dp = p.derivative(tvar);
    if !at_origin(p)?.is_zero() {
        return Err(Error::InvalidArgument(format!("t0 = {t0} is not a root of P(0, t)")));
    }
    if at_origin(&dp)?.is_zero() {
        return Err(Error::Ramified);
    }

    let eval = |q: &MPoly, y: &Series<BigRational>| -> Result<Series<BigRational>> {
        let mut a = BTreeMap::new();
        a.insert(zvar.to_string(), SeriesValue::Uni(Series::z(y.order())));
        a.insert(tvar.to_string(), SeriesValue::Uni(y.clone()));
        Ok(poly_eval_series(q, &a)?.into_uni().expect("univariate inputs"))
    };

    let mut y = Series::constant(t0.clone(), 0);
    let mut known = 1;
    while known <= order {
        let target = (2 * known).min(order + 1);
        let mut coeffs = y.into_coeffs();
        coeffs.resize(target, BigRational::zero());
        let cur = Series::from_coeffs(coeffs);
        let step = &eval(p, &cur)? * &eval(&dp, &cur)?.inverse()?;
        y = &cur - &step;
        known = target;
    }
    if order == 0 {
        return Ok(y);
    }
    if eval(p, &y)?.valuation().is_some() {
        return Err(Error::Consistency("Newton iteration did not converge".into()));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seriesalg::rat;
    use num_traits::One;

    #[test]
    fn square_root_of_one_plus_z() {
        let p: MPoly = "1:t^2 -1:z -1:1".parse().unwrap();
        let s = newton_series_root(&p, "z", "t", &BigRational::one(), 6).unwrap();
        let expect = [rat(1, 1), rat(1, 2), rat(-1, 8), rat(1, 16), rat(-5, 128), rat(7, 256), rat(-21, 1024)];
        assert_eq!(s.coeffs(), &expect);
    }

    #[test]
    fn double_root_is_ramified() {
        let p: MPoly = "1:t^2 -1:z".parse().unwrap();
        assert_eq!(newton_series_root(&p, "z", "t", &BigRational::zero(), 5), Err(Error::Ramified));
    }
}
