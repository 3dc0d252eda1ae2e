//! The kernel of the slice functional equation.
//!
//! Clearing denominators in the functional equation for Av(1432,2143)
//! gives a polynomial `P(y0, y1, y2, y3, x0, x1)` with
//! `y0 = f(z,t)`, `y1 = f(z,1)`, `y2 = f_t(z,1)`, `y3 = f(z,1/(1−z))`,
//! `x0 = z`, `x1 = t`, linear in each `y`. Its `y0`-coefficient is the
//! kernel `K(x0,x1)` and the rest is `R(y1,y2,y3,x0,x1)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fe_class_b::ClassBState;
use crate::fixtures;
use crate::seriesalg::{newton_series_root, poly_eval_series, MPoly, Series, SeriesValue};

/// Irreducible denominator factors occurring in the functional equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Atom {
    Z,
    OneMinusZ,
    OneMinus2Z,
    OneMinusTZ,
    OneMinusZMinusTZ,
    OneMinusT,
    OneMinusTPlusTZ,
}

impl Atom {
    const ALL: [Atom; 7] = [
        Atom::Z,
        Atom::OneMinusZ,
        Atom::OneMinus2Z,
        Atom::OneMinusTZ,
        Atom::OneMinusZMinusTZ,
        Atom::OneMinusT,
        Atom::OneMinusTPlusTZ,
    ];

    fn poly(self) -> MPoly {
        let s = match self {
            Atom::Z => "1:z",
            Atom::OneMinusZ => "1:1 -1:z",
            Atom::OneMinus2Z => "1:1 -2:z",
            Atom::OneMinusTZ => "1:1 -1:t*z",
            Atom::OneMinusZMinusTZ => "1:1 -1:z -1:t*z",
            Atom::OneMinusT => "1:1 -1:t",
            Atom::OneMinusTPlusTZ => "1:1 -1:t 1:t*z",
        };
        s.parse().expect("valid literal")
    }
}

/// `num / Π atom^e`
#[derive(Clone, Debug)]
struct RatFn {
    num: MPoly,
    den: BTreeMap<Atom, u32>,
}

impl RatFn {
    fn poly(p: &str) -> RatFn {
        RatFn { num: p.parse().expect("valid literal"), den: BTreeMap::new() }
    }

    fn over(mut self, atoms: &[(Atom, u32)]) -> RatFn {
        for &(a, e) in atoms {
            *self.den.entry(a).or_insert(0) += e;
        }
        self
    }

    fn mul(&self, other: &RatFn) -> RatFn {
        let mut den = self.den.clone();
        for (&a, &e) in &other.den {
            *den.entry(a).or_insert(0) += e;
        }
        RatFn { num: &self.num * &other.num, den }
    }

    fn lift(&self, den: &BTreeMap<Atom, u32>) -> MPoly {
        let mut num = self.num.clone();
        for (&a, &e) in den {
            let have = self.den.get(&a).copied().unwrap_or(0);
            num = &num * &a.poly().pow(e - have);
        }
        num
    }

    fn add(&self, other: &RatFn) -> RatFn {
        let mut den = self.den.clone();
        for (&a, &e) in &other.den {
            let slot = den.entry(a).or_insert(0);
            *slot = (*slot).max(e);
        }
        RatFn { num: &self.lift(&den) + &other.lift(&den), den }
    }

    fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&RatFn { num: -&other.num, den: other.den.clone() })
    }
}

/// The functional equation as `RHS − LHS`, over its common denominator.
fn equation() -> RatFn {
    use Atom::*;
    let s = RatFn::poly("1:z")
        .over(&[(OneMinusTZ, 1)])
        .add(&RatFn::poly("1:t*z^3").over(&[(OneMinus2Z, 1), (OneMinusTZ, 2)]))
        .add(&RatFn::poly("1:t^2*z^5").over(&[(OneMinusZ, 2), (OneMinusTZ, 2), (OneMinusZMinusTZ, 1)]));
    let g_a = s.mul(&RatFn::poly("1:y1 -1:t*y0").over(&[(OneMinusT, 1)]));

    let w = RatFn::poly("1:t^2*z^4").over(&[(OneMinusZ, 2), (OneMinusTZ, 1), (OneMinusZMinusTZ, 1)]);
    let g_b =
        w.mul(&RatFn::poly("1:y2").over(&[(OneMinusT, 1)]).sub(&RatFn::poly("1:t*y1 -1:t*y0").over(&[(OneMinusT, 2)])));

    let v = RatFn::poly("1:t*z^2").over(&[(OneMinus2Z, 1), (OneMinusTZ, 1)]);
    let g_c = v.mul(
        &RatFn::poly("1:t*z*y1 -1:t*z*y0 -1:t*y1 1:t*y0")
            .over(&[(OneMinusT, 1), (OneMinusTPlusTZ, 1)])
            .add(&RatFn::poly("1:z*y1 -1:z*y3 -1:y1 1:y3").over(&[(Z, 1), (OneMinusTPlusTZ, 1)])),
    );

    RatFn::poly("1:1").add(&g_a).add(&g_b).add(&g_c).sub(&RatFn::poly("1:y0"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelDecomposition {
    /// `P = K·y0 + R`, in `y0..y3, x0, x1`.
    pub p: MPoly,
    /// The extracted `y0`-coefficient, in `x0, x1`.
    pub k: MPoly,
    pub r: MPoly,
    /// The bundled kernel, renamed to `x0, x1`.
    pub reference_k: MPoly,
    /// `k / reference_k`.
    pub cofactor: MPoly,
    /// Denominator factors cancelled from the cleared numerator.
    pub cancelled: Vec<String>,
}

fn to_x(p: &MPoly) -> MPoly {
    p.rename("z", "x0").rename("t", "x1")
}

pub fn kernel_extract() -> Result<KernelDecomposition> {
    let eq = equation();
    let mut num = eq.num.clone();
    let mut cancelled = Vec::new();
    for atom in Atom::ALL {
        let mut e = eq.den.get(&atom).copied().unwrap_or(0);
        while e > 0 {
            match num.div_exact(&atom.poly()) {
                Some(q) => {
                    num = q;
                    e -= 1;
                    cancelled.push(atom.poly().to_string());
                }
                None => break,
            }
        }
    }
    let p = to_x(&num.primitive());
    for y in ["y0", "y1", "y2", "y3"] {
        if p.degree_in(y).unwrap_or(0) > 1 {
            return Err(Error::Consistency(format!("cleared equation is not linear in {y}")));
        }
    }
    let cs = p.coefficients_in("y0");
    let k = cs.get(1).cloned().unwrap_or_default();
    let r = cs.first().cloned().unwrap_or_default();
    if k.vars().iter().any(|v| v.starts_with('y')) {
        return Err(Error::Consistency("y0-coefficient involves other unknowns".into()));
    }
    let reference_k = to_x(&fixtures::KERNEL.poly()?);
    let cofactor = k
        .div_exact(&reference_k)
        .ok_or_else(|| Error::NotDivisible("bundled kernel does not divide the extracted y0-coefficient".into()))?;
    Ok(KernelDecomposition { p, k, r, reference_k, cofactor, cancelled })
}

/// Vanishing orders along the power-series root `t1(z)` of `m1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelRootReport {
    pub order: usize,
    pub t1: Series<BigRational>,
    /// Residual orders (`order + 1` means vanishing through `order`).
    pub m1_residual: usize,
    pub k_residual: usize,
    pub r_residual: usize,
}

impl KernelRootReport {
    pub fn passed(&self) -> bool {
        self.m1_residual > self.order && self.k_residual > self.order && self.r_residual > self.order
    }
}

fn residual(p: &MPoly, a: &BTreeMap<String, SeriesValue<BigRational>>, order: usize) -> Result<usize> {
    super::verify_annihilation(p, a, order)
}

/// Computes `t1` with `m1(z, t1) = 0`, `t1(0) = 1`, and checks that `m1`,
/// the bundled `K` and the extracted `R` all vanish along it, the latter
/// with the auxiliary series of `state`.
pub fn kernel_root_check(state: &ClassBState, decomposition: &KernelDecomposition) -> Result<KernelRootReport> {
    let order = state.order;
    let m1 = fixtures::KERNEL_M1.poly()?;
    let t1 = newton_series_root(&m1, "z", "t", &BigRational::one(), order)?;
    let mut a: BTreeMap<String, SeriesValue<BigRational>> = BTreeMap::new();
    a.insert("z".into(), SeriesValue::Uni(Series::z(order)));
    a.insert("t".into(), SeriesValue::Uni(t1.clone()));
    let m1_residual = residual(&m1, &a, order)?;
    let k_residual = residual(&fixtures::KERNEL.poly()?, &a, order)?;

    let (f1, ft1, frecip) = state.auxiliary_series();
    let mut b: BTreeMap<String, SeriesValue<BigRational>> = BTreeMap::new();
    b.insert("y1".into(), SeriesValue::Uni(f1.to_rational()));
    b.insert("y2".into(), SeriesValue::Uni(ft1.to_rational()));
    b.insert("y3".into(), SeriesValue::Uni(frecip.to_rational()));
    b.insert("x0".into(), SeriesValue::Uni(Series::z(order)));
    b.insert("x1".into(), SeriesValue::Uni(t1.clone()));
    let r_residual = residual(&decomposition.r, &b, order)?;
    Ok(KernelRootReport { order, t1, m1_residual, k_residual, r_residual })
}

/// Residual order of the full `P` at the computed series with `t` kept
/// symbolic.
pub fn equation_residual(state: &ClassBState, decomposition: &KernelDecomposition) -> Result<usize> {
    let order = state.order;
    let (f1, ft1, frecip) = state.auxiliary_series();
    let mut a: BTreeMap<String, SeriesValue<BigInt>> = BTreeMap::new();
    a.insert("y0".into(), SeriesValue::Bi(state.f.clone()));
    a.insert("y1".into(), SeriesValue::Uni(f1));
    a.insert("y2".into(), SeriesValue::Uni(ft1));
    a.insert("y3".into(), SeriesValue::Uni(frecip));
    a.insert("x0".into(), SeriesValue::Uni(Series::z(order)));
    a.insert("x1".into(), SeriesValue::Bi(crate::seriesalg::BiSeries::t(order)));
    let value = poly_eval_series(&decomposition.p, &a)?;
    Ok(value.valuation().unwrap_or(order + 1).min(order + 1))
}
