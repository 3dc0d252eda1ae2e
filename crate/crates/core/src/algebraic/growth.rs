use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::seriesalg::{resultant, MPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthMode {
    /// `c_N / c_(N−1)`
    Ratio,
    /// `N·r_N − (N−1)·r_(N−1)` with `r_n = c_n / c_(n−1)`, which cancels the
    /// `1/n` term of `r_n ≈ γ(1 + α/n)`.
    Extrapolated,
}

impl FromStr for GrowthMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ratio" => Ok(GrowthMode::Ratio),
            "extrapolated" => Ok(GrowthMode::Extrapolated),
            _ => Err(Error::Parse(format!("unknown growth mode `{s}`"))),
        }
    }
}

impl fmt::Display for GrowthMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrowthMode::Ratio => "ratio",
            GrowthMode::Extrapolated => "extrapolated",
        })
    }
}

const MIN_TERMS: usize = 10;

/// Growth-rate estimate from the last terms of a counting sequence.
pub fn growth_estimate(counts: &[BigUint], mode: GrowthMode) -> Result<f64> {
    let nonzero = counts.iter().filter(|c| !c.is_zero()).count();
    if nonzero < MIN_TERMS {
        return Err(Error::InsufficientData { needed: MIN_TERMS, have: nonzero });
    }
    let n = counts.len() - 1;
    let ratio = |i: usize| -> Result<BigRational> {
        if counts[i - 1].is_zero() {
            return Err(Error::InvalidArgument(format!("c_{} is zero", i - 1)));
        }
        Ok(BigRational::new(BigInt::from(counts[i].clone()), BigInt::from(counts[i - 1].clone())))
    };
    let value = match mode {
        GrowthMode::Ratio => ratio(n)?,
        GrowthMode::Extrapolated => {
            let big_n = BigRational::from_integer(BigInt::from(n));
            &big_n * ratio(n)? - (&big_n - BigRational::one()) * ratio(n - 1)?
        }
    };
    Ok(to_f64(&value))
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Candidate dominant singularities of a series with minimal polynomial
/// `P(z, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthCandidates {
    /// Sorted positive real roots.
    pub candidates: Vec<f64>,
    /// The univariate polynomial in `z` whose roots were taken (the product
    /// of the discriminant and the leading coefficient, or `P` itself when it
    /// does not involve `y`).
    pub eliminant: Vec<BigInt>,
    /// Whether the input was `y`-free, in which case the candidates are the
    /// roots of the polynomial themselves.
    pub direct: bool,
}

impl GrowthCandidates {
    /// The smallest candidate `ρ` whose reciprocal lies within `tol` of
    /// `estimate`, as `(ρ, 1/ρ)`.
    pub fn consistent_with(&self, estimate: f64, tol: f64) -> Option<(f64, f64)> {
        self.candidates
            .iter()
            .filter(|&&x| x > 0.0)
            .map(|&x| if self.direct { (1.0 / x, x) } else { (x, 1.0 / x) })
            .filter(|(_, g)| (g - estimate).abs() <= tol)
            .min_by(|a, b| a.0.total_cmp(&b.0))
    }

    /// A small-denominator rational `q` within `1e−9` of `x` that is an
    /// exact root of the eliminant.
    pub fn exact_rational_near(&self, x: f64) -> Option<BigRational> {
        let q = best_rational(x, 100_000)?;
        let v = eval_int(&self.eliminant, &q);
        v.is_zero().then_some(q)
    }
}

/// `Res_y(P, ∂P/∂y)`.
pub fn discriminant(p: &MPoly, yvar: &str) -> Result<MPoly> {
    resultant(p, &p.derivative(yvar), yvar)
}

/// Candidate singularities: positive real zeros of the discriminant and of
/// the leading `y`-coefficient. A `y`-free input yields its own positive
/// real roots.
pub fn growth_exact(p: &MPoly, yvar: &str, zvar: &str) -> Result<GrowthCandidates> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let dy = p.degree_in(yvar).unwrap_or(0);
    let (eliminant, direct) = if dy == 0 {
        (p.clone(), true)
    } else {
        let lead = p.coefficients_in(yvar).pop().expect("positive degree");
        let disc = if dy >= 2 { discriminant(p, yvar)? } else { MPoly::one() };
        (&disc * &lead, false)
    };
    let coeffs = eliminant.to_univariate(zvar)?;
    let q: Vec<BigRational> = coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let roots = positive_real_roots(&q);
    Ok(GrowthCandidates { candidates: roots, eliminant: coeffs, direct })
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn eval_int(p: &[BigInt], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect()
}

fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero divisor");
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        a.iter_mut().for_each(|c| *c /= &l);
    }
    a
}

fn div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db)];
    let lead = b.last().unwrap();
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / lead;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    q
}

fn sturm_sequence(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut seq = vec![p.to_vec(), derivative(p)];
    trim(&mut seq[1]);
    while !seq.last().unwrap().is_empty() {
        let n = seq.len();
        let r: Vec<BigRational> = rem(&seq[n - 2], &seq[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    seq.retain(|s| !s.is_empty());
    seq
}

fn sign_changes(seq: &[Vec<BigRational>], x: &BigRational) -> usize {
    let signs: Vec<bool> = seq.iter().map(|p| eval(p, x)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Sorted positive real roots, isolated with a Sturm sequence, bisected to
/// width `1e−9` and polished by Newton's method.
pub fn positive_real_roots(p: &[BigRational]) -> Vec<f64> {
    let mut p = p.to_vec();
    trim(&mut p);
    if p.len() <= 1 {
        return Vec::new();
    }
    // strip the factor z^k
    let lowest = p.iter().position(|c| !c.is_zero()).unwrap_or(0);
    p.drain(..lowest);
    if p.len() <= 1 {
        return Vec::new();
    }
    let sqfree = div_exact(&p, &gcd(&p, &derivative(&p)));
    let lead = sqfree.last().unwrap().abs();
    let bound = BigRational::one() + sqfree.iter().map(|c| c.abs() / &lead).fold(BigRational::zero(), |a, b| a.max(b));
    let seq = sturm_sequence(&sqfree);
    let eps = BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64));
    let mut out = Vec::new();
    let mut stack = vec![(BigRational::zero(), bound)];
    while let Some((a, b)) = stack.pop() {
        let count = sign_changes(&seq, &a) as i64 - sign_changes(&seq, &b) as i64;
        if count <= 0 {
            continue;
        }
        if count == 1 {
            out.push(refine(&sqfree, a, b, &eps));
            continue;
        }
        let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
        if eval(&sqfree, &mid).is_zero() {
            out.push(to_f64(&mid));
            let nudge = &eps / BigRational::from_integer(BigInt::from(1000));
            stack.push((a, &mid - &nudge));
            stack.push((&mid + &nudge, b));
        } else {
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// The single root in `(a, b]`.
fn refine(p: &[BigRational], mut a: BigRational, mut b: BigRational, eps: &BigRational) -> f64 {
    let two = BigRational::from_integer(BigInt::from(2));
    if eval(p, &b).is_zero() {
        return to_f64(&b);
    }
    let sb = eval(p, &b).is_positive();
    while &b - &a > *eps {
        let mid = (&a + &b) / &two;
        let v = eval(p, &mid);
        if v.is_zero() {
            return to_f64(&mid);
        }
        if v.is_positive() == sb {
            b = mid;
        } else {
            a = mid;
        }
    }
    let (lo, hi) = (to_f64(&a), to_f64(&b));
    let pf: Vec<f64> = p.iter().map(to_f64).collect();
    let dpf: Vec<f64> = derivative(p).iter().map(to_f64).collect();
    let ev = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, k| acc * x + k);
    let mut x = (lo + hi) / 2.0;
    for _ in 0..4 {
        let d = ev(&dpf, x);
        if d == 0.0 {
            break;
        }
        let next = x - ev(&pf, x) / d;
        if !(lo..=hi).contains(&next) {
            break;
        }
        x = next;
    }
    x
}

/// Continued-fraction approximation with denominator at most `max_den`,
/// accepted when within `1e−9` of `x`.
fn best_rational(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() < 1e-9 {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

/// Whether the polynomial in `zvar` obtained by eliminating `yvar` vanishes
/// at the rational `z0`.
pub fn discriminant_vanishes_at(p: &MPoly, yvar: &str, zvar: &str, z0: &BigRational) -> Result<bool> {
    let disc = discriminant(p, yvar)?;
    let mut vals = BTreeMap::new();
    vals.insert(zvar.to_string(), z0.clone());
    Ok(disc.eval_rational(&vals)?.is_zero())
}
