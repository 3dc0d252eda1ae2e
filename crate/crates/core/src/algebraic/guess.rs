use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::linalg::nullspace;
use crate::error::{Error, Result};
use crate::seriesalg::{Coeff, MPoly, Series};

pub const DEFAULT_MARGIN: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessConfig {
    /// Name of the series variable in the returned polynomial.
    pub yvar: String,
    pub zvar: String,
    /// Number of series coefficients that must be annihilated beyond the
    /// number of unknowns (less one, for the scaling freedom).
    pub margin: usize,
}

impl Default for GuessConfig {
    fn default() -> Self {
        GuessConfig { yvar: "F".into(), zvar: "z".into(), margin: DEFAULT_MARGIN }
    }
}

/// A conjectured relation `P(z, y) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicGuess {
    pub poly: MPoly,
    pub dy: usize,
    pub dz: usize,
    /// Annihilated coefficients beyond the number needed to determine the
    /// unknowns.
    pub confidence_margin: usize,
}

/// Searches for a polynomial `P(z, y)` with `deg_y P ≤ dy`, `deg_z P ≤ dz`
/// and `P(z, series) = O(z^(order+1))`, trying `y`-degrees in increasing
/// order and, for each, `z`-degrees in increasing order.
pub fn guess_min_poly<C: Coeff>(series: &Series<C>, dy: usize, dz: usize) -> Result<Option<AlgebraicGuess>> {
    guess_min_poly_with(series, dy, dz, &GuessConfig::default())
}

pub fn guess_min_poly_with<C: Coeff>(
    series: &Series<C>,
    dy: usize,
    dz: usize,
    cfg: &GuessConfig,
) -> Result<Option<AlgebraicGuess>> {
    let order = series.order();
    let needed = (dy + 1) * (dz + 1) + cfg.margin;
    if order < needed {
        return Err(Error::InsufficientData { needed, have: order });
    }
    let s = series.to_rational();
    let mut powers = vec![Series::one(order)];
    for i in 1..=dy {
        let next = powers[i - 1].mul_series(&s);
        powers.push(next);
    }
    for d in 1..=dy {
        for e in 0..=dz {
            let unknowns = (d + 1) * (e + 1);
            // equation n: Σ_{i,j} c_{i,j} [z^(n−j)] y^i = 0
            let rows: Vec<Vec<BigInt>> = (0..=order)
                .map(|n| {
                    let row: Vec<BigRational> = (0..=d)
                        .flat_map(|i| {
                            let p = &powers[i];
                            (0..=e).map(move |j| if j <= n { p.coeff(n - j).clone() } else { BigRational::zero() })
                        })
                        .collect();
                    clear_denominators(&row)
                })
                .collect();
            let ns = nullspace(&rows, unknowns);
            if let Some(v) = ns.first() {
                let mut poly = MPoly::zero();
                let y = MPoly::var(&cfg.yvar);
                let z = MPoly::var(&cfg.zvar);
                for i in 0..=d {
                    for j in 0..=e {
                        let c = &v[i * (e + 1) + j];
                        if !c.is_zero() {
                            let term = &(&y.pow(i as u32) * &z.pow(j as u32)) * &MPoly::constant(c.clone());
                            poly = &poly + &term;
                        }
                    }
                }
                return Ok(Some(AlgebraicGuess {
                    poly: poly.primitive(),
                    dy: d,
                    dz: e,
                    confidence_margin: (order + 1) - (unknowns - 1),
                }));
            }
        }
    }
    Ok(None)
}

fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}
