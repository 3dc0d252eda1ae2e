use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sparse polynomial with integer coefficients in named indeterminates.
///
/// Canonical form: `vars` sorted and each one occurring in some term, no
/// zero coefficients, terms keyed by exponent vectors aligned with `vars`
/// (so the map order is lexicographic in that variable order).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), c.into());
        MPoly::normalized(Vec::new(), terms)
    }

    pub fn one() -> Self {
        MPoly::constant(1)
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], BigInt::one());
        MPoly { vars: vec![name.to_string()], terms }
    }

    /// Builds a polynomial from `(coefficient, [(var, exponent)])` pairs.
    pub fn from_terms<'a, I, M>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigInt, M)>,
        M: IntoIterator<Item = (&'a str, u32)>,
    {
        let mut acc = MPoly::zero();
        for (c, mono) in terms {
            let mut t = MPoly::constant(c);
            for (v, e) in mono {
                t = &t * &MPoly::var(v).pow(e);
            }
            acc = &acc + &t;
        }
        acc
    }

    fn normalized(vars: Vec<String>, terms: BTreeMap<Vec<u32>, BigInt>) -> Self {
        let terms: BTreeMap<Vec<u32>, BigInt> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let used: Vec<usize> = (0..vars.len()).filter(|&i| terms.keys().any(|m| m[i] > 0)).collect();
        if used.len() == vars.len() {
            return MPoly { vars, terms };
        }
        let new_vars = used.iter().map(|&i| vars[i].clone()).collect();
        let new_terms = terms.into_iter().map(|(m, c)| (used.iter().map(|&i| m[i]).collect(), c)).collect();
        MPoly { vars: new_vars, terms: new_terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(coefficient, [(var, exponent)])`, lexicographically
    /// descending.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, Vec<(&str, u32)>)> + '_ {
        self.terms.iter().rev().map(move |(m, c)| {
            let mono = self.vars.iter().zip(m).filter(|(_, &e)| e > 0).map(|(v, &e)| (v.as_str(), e)).collect();
            (c, mono)
        })
    }

    fn aligned(&self, vars: &[String]) -> BTreeMap<Vec<u32>, BigInt> {
        let idx: Vec<usize> =
            self.vars.iter().map(|v| vars.iter().position(|w| w == v).expect("target vars cover source")).collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; vars.len()];
                for (i, &x) in m.iter().enumerate() {
                    e[idx[i]] = x;
                }
                (e, c.clone())
            })
            .collect()
    }

    fn union_vars(&self, other: &MPoly) -> Vec<String> {
        let set: BTreeSet<&String> = self.vars.iter().chain(&other.vars).collect();
        set.into_iter().cloned().collect()
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        MPoly::normalized(self.vars.clone(), terms)
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Degree in `var`; `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        Some(match self.vars.iter().position(|v| v == var) {
            Some(i) => self.terms.keys().map(|m| m[i]).max().unwrap_or(0),
            None => 0,
        })
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Coefficients `c_0..c_d` with `self = Σ c_e·var^e`.
    pub fn coefficients_in(&self, var: &str) -> Vec<MPoly> {
        let Some(d) = self.degree_in(var) else {
            return Vec::new();
        };
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return vec![self.clone()];
        };
        let mut buckets: Vec<BTreeMap<Vec<u32>, BigInt>> = vec![BTreeMap::new(); d as usize + 1];
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            rest[i] = 0;
            buckets[m[i] as usize].insert(rest, c.clone());
        }
        buckets.into_iter().map(|t| MPoly::normalized(self.vars.clone(), t)).collect()
    }

    pub fn from_coefficients_in(var: &str, coeffs: &[MPoly]) -> MPoly {
        let x = MPoly::var(var);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    pub fn derivative(&self, var: &str) -> MPoly {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return MPoly::zero();
        };
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[i] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2[i] -= 1;
                (m2, c * BigInt::from(m[i]))
            })
            .collect();
        MPoly::normalized(self.vars.clone(), terms)
    }

    pub fn rename(&self, from: &str, to: &str) -> MPoly {
        let mut acc = MPoly::zero();
        for (c, mono) in self.terms() {
            let mono: Vec<(&str, u32)> = mono.into_iter().map(|(v, e)| (if v == from { to } else { v }, e)).collect();
            acc = &acc + &MPoly::from_terms([(c.clone(), mono)]);
        }
        acc
    }

    /// Substitutes `var := value`.
    pub fn substitute(&self, var: &str, value: &MPoly) -> MPoly {
        let coeffs = self.coefficients_in(var);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    pub fn eval_rational(&self, values: &BTreeMap<String, BigRational>) -> Result<BigRational> {
        let vals: Vec<&BigRational> = self
            .vars
            .iter()
            .map(|v| values.get(v).ok_or_else(|| Error::MissingAssignment(v.clone())))
            .collect::<Result<_>>()?;
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (x, &e) in vals.iter().zip(m) {
                if e > 0 {
                    term *= num_traits::pow((*x).clone(), e as usize);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, values: &BTreeMap<String, f64>) -> Result<f64> {
        let vals: Vec<f64> = self
            .vars
            .iter()
            .map(|v| values.get(v).copied().ok_or_else(|| Error::MissingAssignment(v.clone())))
            .collect::<Result<_>>()?;
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut term: f64 = c.to_string().parse().unwrap_or(f64::NAN);
            for (x, &e) in vals.iter().zip(m) {
                term *= x.powi(e as i32);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Dense coefficient list (low degree first) when the polynomial
    /// involves at most the single indeterminate `var`.
    pub fn to_univariate(&self, var: &str) -> Result<Vec<BigInt>> {
        if self.vars.iter().any(|v| v != var) {
            return Err(Error::InvalidArgument(format!("polynomial involves {:?}, expected only `{var}`", self.vars)));
        }
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![BigInt::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            out[m.first().copied().unwrap_or(0) as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_univariate(var: &str, coeffs: &[BigInt]) -> MPoly {
        let terms = coeffs.iter().enumerate().map(|(e, c)| (vec![e as u32], c.clone())).collect();
        MPoly::normalized(vec![var.to_string()], terms)
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Content-free representative with a positive leading coefficient.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c / &g)).collect();
        MPoly { vars: self.vars.clone(), terms }
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms.values().next_back().cloned().unwrap_or_default()
    }

    /// Exact quotient `self / divisor` in `Z[vars]`, or `None` when the
    /// division leaves a remainder.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        if divisor.is_zero() {
            return None;
        }
        let vars = self.union_vars(divisor);
        let d = divisor.aligned(&vars);
        let (dm, dc) = d.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.aligned(&vars);
        let mut quot: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if rm.iter().zip(&dm).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qm: Vec<u32> = rm.iter().zip(&dm).map(|(a, b)| a - b).collect();
            for (m, c) in &d {
                let key: Vec<u32> = m.iter().zip(&qm).map(|(a, b)| a + b).collect();
                let entry = rem.entry(key).or_insert_with(BigInt::zero);
                *entry -= c * &qc;
                if entry.is_zero() {
                    let key: Vec<u32> = m.iter().zip(&qm).map(|(a, b)| a + b).collect();
                    rem.remove(&key);
                }
            }
            quot.insert(qm, qc);
        }
        Some(MPoly::normalized(vars, quot))
    }

    /// Serialization as whitespace-separated `coef:monomial` terms, one per
    /// line, lexicographically descending.
    pub fn to_term_list(&self) -> String {
        let mut out = String::new();
        for (c, mono) in self.terms() {
            out.push_str(&format!("{c}:{}\n", monomial_string(&mono)));
        }
        out
    }

    pub fn parse_term_list(s: &str) -> Result<MPoly> {
        let mut acc_terms: Vec<(BigInt, Vec<(String, u32)>)> = Vec::new();
        for tok in s.split_whitespace() {
            if tok.starts_with('#') {
                continue;
            }
            let (c, m) =
                tok.split_once(':').ok_or_else(|| Error::Parse(format!("term `{tok}` lacks `coef:monomial` form")))?;
            let c: BigInt = c.parse().map_err(|e| Error::Parse(format!("coefficient `{c}`: {e}")))?;
            let mut mono = Vec::new();
            if m != "1" {
                for factor in m.split('*') {
                    let (v, e) = match factor.split_once('^') {
                        Some((v, e)) => {
                            (v, e.parse::<u32>().map_err(|err| Error::Parse(format!("exponent `{e}`: {err}")))?)
                        }
                        None => (factor, 1),
                    };
                    if v.is_empty() || !v.chars().all(|ch| ch.is_alphanumeric() || ch == '_') {
                        return Err(Error::Parse(format!("bad indeterminate `{v}` in `{tok}`")));
                    }
                    mono.push((v.to_string(), e));
                }
            }
            acc_terms.push((c, mono));
        }
        Ok(MPoly::from_terms(acc_terms.iter().map(|(c, m)| (c.clone(), m.iter().map(|(v, e)| (v.as_str(), *e))))))
    }
}

/// Reads a term list, skipping `#` comment lines.
pub fn parse_term_file(contents: &str) -> Result<MPoly> {
    let body: String = contents.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join("\n");
    MPoly::parse_term_list(&body)
}

fn monomial_string(mono: &[(&str, u32)]) -> String {
    if mono.is_empty() {
        return "1".to_string();
    }
    mono.iter().map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") }).collect::<Vec<_>>().join("*")
}

impl FromStr for MPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MPoly::parse_term_list(s)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, mono)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", monomial_string(&mono))?;
            } else {
                write!(f, "{abs}*{}", monomial_string(&mono))?;
            }
        }
        Ok(())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let vars = self.union_vars(rhs);
        let mut terms = self.aligned(&vars);
        for (m, c) in rhs.aligned(&vars) {
            *terms.entry(m).or_insert_with(BigInt::zero) += c;
        }
        MPoly::normalized(vars, terms)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        let vars = self.union_vars(rhs);
        let a = self.aligned(&vars);
        let b = rhs.aligned(&vars);
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                *terms.entry(m).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        MPoly::normalized(vars, terms)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
