//! Counting Av(2413,3412) through its pair of functional equations.
//!
//! `f(z,t)` counts the class and `fskew(z,t)` its skew-indecomposable
//! members of length at least 2, with `t` marking the initial decreasing
//! run. They satisfy
//!
//! ```text
//! fskew(z,t) = z·f(z,1)·(f(z,t) − 1) + Ω[fskew(z,t)]
//! f(z,t)     = 1/(1 − zt) + fskew(z,t)/((1 − zt)(1 − z))
//! ```
//!
//! where Ω adds a layer: `t^k ↦ z/(1−z)·(f(z,t) − 1)·Σ_{j=0..k} t^j f(z,1)^(k−j)`.
//! Every term on the right of the first equation has `z`-order at least one
//! more than the data it uses, so the pair can be solved order by order.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::seriesalg::{tpoly, BiSeries, Coeff, Series};

pub const DEFAULT_ORDER: usize = 40;

/// Both series of the class, known to `z^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassAState {
    pub order: usize,
    pub f: BiSeries<BigInt>,
    pub fskew: BiSeries<BigInt>,
}

impl ClassAState {
    /// `F(z) = f(z,1)`.
    pub fn f1(&self) -> Series<BigInt> {
        self.f.subst_t_one()
    }

    /// `fskew(z, f(z,1))`.
    pub fn fskew_at_f1(&self) -> Series<BigInt> {
        self.fskew.subst_t(&self.f1())
    }

    pub fn counts(&self) -> Result<Vec<BigUint>> {
        to_naturals(self.f1().coeffs())
    }

    /// `m[n][k]`: members of length `n` whose initial decreasing run is `k`.
    pub fn distribution(&self) -> Result<Vec<Vec<BigUint>>> {
        self.f.rows().iter().map(|r| to_naturals(r)).collect()
    }
}

pub(crate) fn to_naturals(cs: &[BigInt]) -> Result<Vec<BigUint>> {
    cs.iter().map(|c| c.to_biguint().ok_or_else(|| Error::Consistency(format!("negative coefficient {c}")))).collect()
}

/// Applies Ω to `b`, using the ambient `f(z,t)` and `f1 = f(z,1)`.
///
/// Each monomial is expanded with the finite sum `Σ_{j≤k} t^j f1^(k−j)`, so
/// no division by `f1 − t` ever happens.
pub fn omega_apply<C: Coeff>(b: &BiSeries<C>, f: &BiSeries<C>, f1: &Series<C>) -> BiSeries<C> {
    let order = b.order().min(f.order()).min(f1.order());
    let h = layer_sum(b, f1, order);
    let mut fm1 = f.truncate(order);
    let one = BiSeries::one(order);
    fm1 = &fm1 - &one;
    let geo = Series::geometric_power(1, order);
    fm1.mul_bi(&h).mul_series(&geo).shift_z(1)
}

/// `H = Σ_k b_k(z)·Σ_{j≤k} t^j f1^(k−j)` where `b = Σ_k b_k(z) t^k`.
fn layer_sum<C: Coeff>(b: &BiSeries<C>, f1: &Series<C>, order: usize) -> BiSeries<C> {
    let maxdeg = b.rows()[..=order].iter().map(Vec::len).max().unwrap_or(0);
    let mut powers = vec![Series::one(order)];
    for p in 1..maxdeg {
        let next = powers[p - 1].mul_series(&f1.truncate(order));
        powers.push(next);
    }
    let mut h = BiSeries::zero(order);
    for k in 0..maxdeg {
        let col = b.column(k).truncate(order);
        if col.is_zero() {
            continue;
        }
        let mut inner = BiSeries::zero(order);
        for j in 0..=k {
            let mut rows: Vec<Vec<C>> = vec![Vec::new(); order + 1];
            for (r, c) in powers[k - j].coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let mut row = vec![C::zero(); j + 1];
                    row[j] = c.clone();
                    rows[r] = row;
                }
            }
            inner = &inner + &BiSeries::from_rows(rows);
        }
        h = &h + &inner.mul_series(&col);
    }
    h
}

/// Solves the pair of equations to order `order`.
pub fn iterate(order: usize) -> ClassAState {
    let n1 = order + 1;
    let mut f: Vec<Vec<BigInt>> = Vec::with_capacity(n1);
    let mut s: Vec<Vec<BigInt>> = Vec::with_capacity(n1);
    let mut f1: Vec<BigInt> = Vec::with_capacity(n1);
    // pow[p][r] = [z^r] f1^p
    let mut pow: Vec<Vec<BigInt>> = vec![Vec::with_capacity(n1); n1];
    // h[r] = [z^r] of the layer sum H applied to fskew
    let mut h: Vec<Vec<BigInt>> = Vec::with_capacity(n1);
    let mut omega_acc: Vec<BigInt> = Vec::new();

    for n in 0..=order {
        // z·f1·(f − 1)
        let mut sn: Vec<BigInt> = Vec::new();
        for m in 1..n {
            tpoly::add_scaled_shifted(&mut sn, &f[m], &f1[n - 1 - m], 0);
        }
        // z/(1−z)·(f − 1)·H: accumulate Q[n−1] into the running sum
        if n >= 1 {
            let r = n - 1;
            let mut q = Vec::new();
            for m in 1..=r {
                tpoly::add_mul_into(&mut q, &f[m], &h[r - m]);
            }
            tpoly::add_into(&mut omega_acc, &q);
        }
        tpoly::add_into(&mut sn, &omega_acc);

        // (1 − z)(1 − zt) f = 1 − z + fskew
        let mut fn_ = sn.clone();
        match n {
            0 => tpoly::add_into(&mut fn_, &[BigInt::one()]),
            1 => tpoly::sub_into(&mut fn_, &[BigInt::one()]),
            _ => {}
        }
        if n >= 1 {
            tpoly::add_mul_into(&mut fn_, &f[n - 1], &[BigInt::one(), BigInt::one()]);
        }
        if n >= 2 {
            tpoly::add_scaled_shifted(&mut fn_, &f[n - 2], &BigInt::from(-1), 1);
        }
        f1.push(tpoly::sum(&fn_));
        f.push(fn_);
        s.push(sn);

        pow[0].push(if n == 0 { BigInt::one() } else { BigInt::zero() });
        for p in 1..n1 {
            let mut acc = BigInt::zero();
            for i in 0..=n {
                acc.add_mul(&f1[i], &pow[p - 1][n - i]);
            }
            pow[p].push(acc);
        }

        let mut hn: Vec<BigInt> = Vec::new();
        for m in 0..=n {
            for (k, c) in s[m].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for j in 0..=k {
                    let pc = &pow[k - j][n - m];
                    if !pc.is_zero() {
                        if hn.len() <= j {
                            hn.resize(j + 1, BigInt::zero());
                        }
                        hn[j].add_mul(c, pc);
                    }
                }
            }
        }
        tpoly::trim(&mut hn);
        h.push(hn);
    }
    ClassAState { order, f: BiSeries::from_rows(f), fskew: BiSeries::from_rows(s) }
}

/// The counting sequence `c_0..c_order` of Av(2413,3412).
pub fn counts(order: usize) -> Result<Vec<BigUint>> {
    iterate(order).counts()
}

/// Residual of the skew-indecomposable equation, computed with the generic
/// operator [`omega_apply`]; zero to full order for a correct state.
pub fn skew_equation_residual(state: &ClassAState) -> BiSeries<BigInt> {
    let order = state.order;
    let f1 = state.f1();
    let one = BiSeries::one(order);
    let gi = (&state.f - &one).mul_series(&f1).shift_z(1);
    let gii = omega_apply(&state.fskew, &state.f, &f1);
    &(&state.fskew - &gi) - &gii
}

/// Residual of `(1 − zt)(1 − z)·f − (1 − z) − fskew`.
pub fn lift_equation_residual(state: &ClassAState) -> BiSeries<BigInt> {
    let order = state.order;
    let one_minus_z = Series::from_i64s(order, &[1, -1]);
    let one_minus_tz = BiSeries::from_rows(
        std::iter::once(vec![BigInt::one()])
            .chain(std::iter::once(vec![BigInt::zero(), BigInt::from(-1)]))
            .chain(std::iter::repeat(Vec::new()))
            .take(order + 1)
            .collect(),
    );
    let lhs = state.f.mul_bi(&one_minus_tz).mul_series(&one_minus_z);
    &(&lhs - &BiSeries::from_series(&one_minus_z)) - &state.fskew
}

/// Residual of the `t`-free identity `(1 − z)²·f(z,1) − (1 − z) − fskew(z,1)`.
pub fn specialized_residual(state: &ClassAState) -> Series<BigInt> {
    let order = state.order;
    let one_minus_z = Series::from_i64s(order, &[1, -1]);
    let lhs = &(&state.f1() * &one_minus_z) * &one_minus_z;
    &(&lhs - &one_minus_z) - &state.fskew.subst_t_one()
}
