//! Counting Av(1432,2143) by adding slices.
//!
//! Here `t` marks the entries of the trailing increasing run that can still
//! receive a new slice; the class satisfies
//!
//! ```text
//! f(z,t) = 1 + Φ[f] + Ψ[Θ[f]] + Ξ[Λ[f]]
//! ```
//!
//! with `s(z,t)` the single-slice series and the operators acting on
//! monomials `t^k`:
//!
//! | op | prefactor                             | image of `t^k`                              |
//! |----|---------------------------------------|---------------------------------------------|
//! | Φ  | `s(z,t)`                              | `1 + t + … + t^k`                           |
//! | Θ  | `1`                                   | `t + … + t^k`                               |
//! | Ψ  | `t²z⁴/((1−z)²(1−tz)(1−(1+t)z))`       | `1 + t + … + t^(k−1)`                       |
//! | Λ  | `z/(1−2z)`                            | `t + … + t^k`                               |
//! | Ξ  | `tz/(1−tz)`                           | `Σ_{j<k} t^(k−1−j)/(1−z)^j`                 |
//!
//! Θ and Λ have `t`-free prefactors, so Ψ∘Θ and Ξ∘Λ are again monomial
//! operators and are applied in one pass. Every prefactor is divisible by
//! `z`, which makes the `z^n` coefficient of `f` depend on lower orders only.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fe_class_a::to_naturals;
use crate::seriesalg::{tpoly, BiSeries, Series};

pub const DEFAULT_ORDER: usize = 40;

type Bi = BiSeries<BigInt>;

fn poly(cs: &[i64]) -> Vec<BigInt> {
    cs.iter().map(|&c| BigInt::from(c)).collect()
}

/// `1 − a·z − b·t·z` as a bivariate series.
fn linear_factor(a: i64, b: i64, order: usize) -> Bi {
    let mut rows = vec![Vec::new(); order + 1];
    rows[0] = poly(&[1]);
    if order >= 1 {
        rows[1] = poly(&[-a, -b]);
    }
    Bi::from_rows(rows)
}

fn inv(a: i64, b: i64, order: usize) -> Bi {
    linear_factor(a, b, order).inverse().expect("unit constant term")
}

fn monomial(n: usize, k: usize, order: usize) -> Bi {
    Bi::monomial(n, k, BigInt::one(), order)
}

fn product(factors: &[Bi]) -> Bi {
    let mut it = factors.iter();
    let first = it.next().expect("nonempty product").clone();
    it.fold(first, |acc, x| acc.mul_bi(x))
}

/// Single-slice permutations (the empty one excluded):
/// `z/(1−tz) + tz³/((1−2z)(1−tz)²) + t²z⁵/((1−z)²(1−tz)²(1−(1+t)z))`.
pub fn s_series(order: usize) -> Bi {
    let tz = inv(0, 1, order);
    let a = monomial(1, 0, order).mul_bi(&tz);
    let b = product(&[monomial(3, 1, order), inv(2, 0, order), tz.clone(), tz.clone()]);
    let c = product(&[monomial(5, 2, order), inv(1, 0, order), inv(1, 0, order), tz.clone(), tz, inv(1, 1, order)]);
    &(&a + &b) + &c
}

/// `t²z⁴/((1−z)²(1−tz)(1−(1+t)z))`
pub fn psi_prefactor(order: usize) -> Bi {
    product(&[monomial(4, 2, order), inv(1, 0, order), inv(1, 0, order), inv(0, 1, order), inv(1, 1, order)])
}

/// `tz²/((1−2z)(1−tz))`, the prefactor of Ξ∘Λ.
pub fn xi_lambda_prefactor(order: usize) -> Bi {
    product(&[monomial(2, 1, order), inv(2, 0, order), inv(0, 1, order)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Phi,
    Theta,
    Psi,
    Lambda,
    Xi,
    PsiTheta,
    XiLambda,
}

/// A `Q[[z]]`-linear operator `t^k ↦ prefactor(z,t)·image_k(z,t)`.
#[derive(Clone, Debug)]
pub struct MonomialOperator {
    kind: OperatorKind,
    order: usize,
    prefactor: Bi,
}

impl MonomialOperator {
    pub fn new(kind: OperatorKind, order: usize) -> Self {
        let prefactor = match kind {
            OperatorKind::Phi => s_series(order),
            OperatorKind::Theta => Bi::one(order),
            OperatorKind::Psi | OperatorKind::PsiTheta => psi_prefactor(order),
            OperatorKind::Lambda => product(&[monomial(1, 0, order), inv(2, 0, order)]),
            OperatorKind::Xi => product(&[monomial(1, 1, order), inv(0, 1, order)]),
            OperatorKind::XiLambda => xi_lambda_prefactor(order),
        };
        MonomialOperator { kind, order, prefactor }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn prefactor(&self) -> &Bi {
        &self.prefactor
    }

    /// The image of `t^k` before multiplication by the prefactor.
    pub fn image(&self, k: usize) -> Bi {
        let order = self.order;
        let block = |from: usize, to: Option<usize>| match to {
            Some(to) => tpoly::geometric_block::<BigInt>(from, to),
            None => Vec::new(),
        };
        match self.kind {
            OperatorKind::Phi => Bi::from_t_poly(&block(0, Some(k)), order),
            OperatorKind::Theta | OperatorKind::Lambda => Bi::from_t_poly(&block(1, Some(k)), order),
            OperatorKind::Psi => Bi::from_t_poly(&block(0, k.checked_sub(1)), order),
            OperatorKind::PsiTheta => {
                let p: Vec<BigInt> = (0..k).map(|j| BigInt::from(k - j)).collect();
                Bi::from_t_poly(&p, order)
            }
            OperatorKind::Xi => {
                let mut acc = Bi::zero(order);
                for j in 0..k {
                    let g = Series::geometric_power(j, order);
                    acc = &acc + &Bi::from_series(&g).mul_t_poly(&block(k - 1 - j, Some(k - 1 - j)));
                }
                acc
            }
            OperatorKind::XiLambda => {
                let mut acc = Bi::zero(order);
                for j in 0..k {
                    let g = Series::geometric_power(j, order);
                    acc = &acc + &Bi::from_series(&g).mul_t_poly(&block(0, Some(k - 1 - j)));
                }
                acc
            }
        }
    }

    /// Applies the operator to `b` monomial by monomial.
    pub fn apply(&self, b: &Bi) -> Bi {
        let order = self.order.min(b.order());
        let maxdeg = b.rows()[..=order].iter().map(Vec::len).max().unwrap_or(0);
        let mut inner = Bi::zero(order);
        for k in 0..maxdeg {
            let col = b.column(k).truncate(order);
            if !col.is_zero() {
                inner = &inner + &self.image(k).truncate(order).mul_series(&col);
            }
        }
        self.prefactor.truncate(order).mul_bi(&inner)
    }
}

pub fn phi_apply(b: &Bi) -> Bi {
    MonomialOperator::new(OperatorKind::Phi, b.order()).apply(b)
}

pub fn theta_apply(b: &Bi) -> Bi {
    MonomialOperator::new(OperatorKind::Theta, b.order()).apply(b)
}

pub fn psi_apply(b: &Bi) -> Bi {
    MonomialOperator::new(OperatorKind::Psi, b.order()).apply(b)
}

pub fn lambda_apply(b: &Bi) -> Bi {
    MonomialOperator::new(OperatorKind::Lambda, b.order()).apply(b)
}

pub fn xi_apply(b: &Bi) -> Bi {
    MonomialOperator::new(OperatorKind::Xi, b.order()).apply(b)
}

/// `f(z,t)` and `s(z,t)` to order `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassBState {
    pub order: usize,
    pub f: Bi,
    pub s: Bi,
}

impl ClassBState {
    pub fn f1(&self) -> Series<BigInt> {
        self.f.subst_t_one()
    }

    /// `f_t(z,1)`
    pub fn ft1(&self) -> Series<BigInt> {
        self.f.deriv_t_at_1()
    }

    /// `f(z, 1/(1−z))`
    pub fn frecip(&self) -> Series<BigInt> {
        self.f.subst_t(&Series::geometric_power(1, self.order))
    }

    /// `(f(z,1), f_t(z,1), f(z,1/(1−z)))`
    pub fn auxiliary_series(&self) -> (Series<BigInt>, Series<BigInt>, Series<BigInt>) {
        (self.f1(), self.ft1(), self.frecip())
    }

    pub fn counts(&self) -> Result<Vec<BigUint>> {
        to_naturals(self.f1().coeffs())
    }

    pub fn distribution(&self) -> Result<Vec<Vec<BigUint>>> {
        self.f.rows().iter().map(|r| to_naturals(r)).collect()
    }

    /// The three slice-addition cases `Φ[f]`, `Ψ[Θ[f]]`, `Ξ[Λ[f]]`.
    pub fn cases(&self) -> [Bi; 3] {
        [
            MonomialOperator::new(OperatorKind::Phi, self.order).apply(&self.f),
            MonomialOperator::new(OperatorKind::PsiTheta, self.order).apply(&self.f),
            MonomialOperator::new(OperatorKind::XiLambda, self.order).apply(&self.f),
        ]
    }
}

/// Solves the functional equation to order `order`.
pub fn iterate(order: usize) -> Result<ClassBState> {
    let ops =
        [OperatorKind::Phi, OperatorKind::PsiTheta, OperatorKind::XiLambda].map(|k| MonomialOperator::new(k, order));
    // images[op][k] rows, for k ≤ order
    let images: Vec<Vec<Bi>> = ops.iter().map(|op| (0..=order).map(|k| op.image(k)).collect()).collect();
    let mut f: Vec<Vec<BigInt>> = Vec::with_capacity(order + 1);
    // d[op][r] = [z^r] Σ_k f_k(z)·image_k
    let mut d: Vec<Vec<Vec<BigInt>>> = vec![Vec::new(); ops.len()];
    for n in 0..=order {
        let mut row: Vec<BigInt> = if n == 0 { vec![BigInt::one()] } else { Vec::new() };
        for (o, op) in ops.iter().enumerate() {
            let p = op.prefactor();
            for (r, dr) in d[o].iter().enumerate().take(n) {
                tpoly::add_mul_into(&mut row, p.row(n - r), dr);
            }
        }
        if row.iter().any(|c| c < &BigInt::zero()) {
            return Err(Error::Consistency(format!("negative coefficient at z^{n}")));
        }
        f.push(row);
        for (o, imgs) in images.iter().enumerate() {
            let mut dn = Vec::new();
            for (m, fm) in f.iter().enumerate() {
                for (k, c) in fm.iter().enumerate() {
                    if !c.is_zero() {
                        tpoly::add_scaled_shifted(&mut dn, imgs[k].row(n - m), c, 0);
                    }
                }
            }
            d[o].push(dn);
        }
    }
    Ok(ClassBState { order, f: Bi::from_rows(f), s: s_series(order) })
}

pub fn counts(order: usize) -> Result<Vec<BigUint>> {
    iterate(order)?.counts()
}

/// The three cases recomputed from their rational closed forms by exact
/// division, to cross-check the monomial operators. The last one loses an
/// order to a division by `z`.
pub mod closed_form {
    use super::*;

    fn t_poly(cs: &[i64], order: usize) -> Bi {
        Bi::from_t_poly(&poly(cs), order)
    }

    fn uni(s: &Series<BigInt>) -> Bi {
        Bi::from_series(s)
    }

    /// `s·(f(z,1) − t·f(z,t))/(1 − t)`
    pub fn g_a(state: &ClassBState) -> Result<Bi> {
        let n = state.order;
        let num = &uni(&state.f1()) - &state.f.mul_t_poly(&poly(&[0, 1]));
        state.s.mul_bi(&num).div_exact(&t_poly(&[1, -1], n))
    }

    /// `W·(f_t(z,1)·(1 − t) − t·(f(z,1) − f(z,t)))/(1 − t)²`
    pub fn g_b(state: &ClassBState) -> Result<Bi> {
        let n = state.order;
        let a = uni(&state.ft1()).mul_t_poly(&poly(&[1, -1]));
        let b = (&uni(&state.f1()) - &state.f).mul_t_poly(&poly(&[0, 1]));
        psi_prefactor(n).mul_bi(&(&a - &b)).div_exact(&t_poly(&[1, -2, 1], n))
    }

    /// `tz²/((1−2z)(1−tz))·(z − 1)·(tz·(f(z,1) − f) + (1 − t)(f(z,1) − f(z,1/(1−z))))
    ///   / (z·(1 − t)·(1 − t + tz))`
    pub fn g_c(state: &ClassBState) -> Result<Bi> {
        let n = state.order;
        let f1 = uni(&state.f1());
        let a = (&f1 - &state.f).mul_t_poly(&poly(&[0, 1])).shift_z(1);
        let b = (&f1 - &uni(&state.frecip())).mul_t_poly(&poly(&[1, -1]));
        let z_minus_1 = uni(&Series::from_i64s(n, &[-1, 1]));
        let num = xi_lambda_prefactor(n).mul_bi(&z_minus_1).mul_bi(&(&a + &b));
        let mut den_rows = vec![Vec::new(); n + 1];
        den_rows[0] = poly(&[1, -2, 1]);
        if n >= 1 {
            den_rows[1] = poly(&[0, 1, -1]);
        }
        num.unshift_z(1)?.div_exact(&Bi::from_rows(den_rows[..n].to_vec()))
    }
}
