//! Dense polynomials in the catalytic variable `t`, stored low degree first
//! with no trailing zeros. These are the coefficients of bivariate series.

use super::Coeff;

pub fn trim<C: Coeff>(p: &mut Vec<C>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn add_into<C: Coeff>(dst: &mut Vec<C>, src: &[C]) {
    if dst.len() < src.len() {
        dst.resize(src.len(), C::zero());
    }
    for (d, s) in dst.iter_mut().zip(src) {
        d.add_ref(s);
    }
    trim(dst);
}

pub fn sub_into<C: Coeff>(dst: &mut Vec<C>, src: &[C]) {
    if dst.len() < src.len() {
        dst.resize(src.len(), C::zero());
    }
    for (d, s) in dst.iter_mut().zip(src) {
        d.sub_ref(s);
    }
    trim(dst);
}

/// `dst += a * b`
pub fn add_mul_into<C: Coeff>(dst: &mut Vec<C>, a: &[C], b: &[C]) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    let need = a.len() + b.len() - 1;
    if dst.len() < need {
        dst.resize(need, C::zero());
    }
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            dst[i + j].add_mul(x, y);
        }
    }
    trim(dst);
}

/// `dst += c * t^shift * a`
pub fn add_scaled_shifted<C: Coeff>(dst: &mut Vec<C>, a: &[C], c: &C, shift: usize) {
    if a.is_empty() || c.is_zero() {
        return;
    }
    let need = a.len() + shift;
    if dst.len() < need {
        dst.resize(need, C::zero());
    }
    for (i, x) in a.iter().enumerate() {
        dst[i + shift].add_mul(x, c);
    }
    trim(dst);
}

pub fn mul<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = Vec::new();
    add_mul_into(&mut out, a, b);
    out
}

pub fn scale<C: Coeff>(a: &[C], c: &C) -> Vec<C> {
    let mut out: Vec<C> = a.iter().map(|x| x.mul_ref(c)).collect();
    trim(&mut out);
    out
}

pub fn eval<C: Coeff>(a: &[C], x: &C) -> C {
    let mut acc = C::zero();
    for c in a.iter().rev() {
        acc = acc.mul_ref(x);
        acc.add_ref(c);
    }
    acc
}

pub fn sum<C: Coeff>(a: &[C]) -> C {
    let mut acc = C::zero();
    for c in a {
        acc.add_ref(c);
    }
    acc
}

/// Value of the derivative at `t = 1`: `Σ k·a_k`.
pub fn deriv_at_one<C: Coeff>(a: &[C]) -> C {
    let mut acc = C::zero();
    for (k, c) in a.iter().enumerate().skip(1) {
        acc.add_mul(c, &C::from_i64(k as i64));
    }
    acc
}

/// `t^from + ... + t^to` (empty when `from > to`)
pub fn geometric_block<C: Coeff>(from: usize, to: usize) -> Vec<C> {
    let mut out = vec![C::zero(); to + 1];
    for c in out.iter_mut().take(to + 1).skip(from) {
        *c = C::one();
    }
    trim(&mut out);
    out
}

/// Exact division `a / b`; `None` when `b` is zero or the remainder is
/// nonzero.
pub fn div_exact<C: Coeff>(a: &[C], b: &[C]) -> Option<Vec<C>> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    let mut q = vec![C::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let top = &rem[i + db];
        if top.is_zero() {
            continue;
        }
        let c = top.div_exact(lead)?;
        for (j, bj) in b.iter().enumerate() {
            rem[i + j].sub_mul(&c, bj);
        }
        q[i] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}
