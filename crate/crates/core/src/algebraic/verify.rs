use std::collections::BTreeMap;

use crate::error::Result;
use crate::seriesalg::{poly_eval_series, Coeff, MPoly, SeriesValue};

/// The `z`-order of the first nonzero coefficient of `P` evaluated at
/// `assignment`, or `order + 1` when it vanishes through `order`.
///
/// When the evaluation is only known to a lower order than requested, the
/// residual cannot exceed that order plus one, so the check fails.
pub fn verify_annihilation<C: Coeff>(
    p: &MPoly,
    assignment: &BTreeMap<String, SeriesValue<C>>,
    order: usize,
) -> Result<usize> {
    let value = poly_eval_series(p, assignment)?;
    let known = value.order();
    let residual = value.valuation().unwrap_or(known + 1);
    Ok(residual.min(order + 1))
}
