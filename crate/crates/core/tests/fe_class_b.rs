mod common;

use common::*;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use permclass::fe_class_b::{self, closed_form, MonomialOperator, OperatorKind};
use permclass::BiSeries;

type Bi = BiSeries<BigInt>;

fn t_power(k: usize, order: usize) -> Bi {
    Bi::monomial(0, k, BigInt::one(), order)
}

fn tz_inverse(a: i64, b: i64, order: usize) -> Bi {
    let mut rows = vec![Vec::new(); order + 1];
    rows[0] = vec![BigInt::one()];
    rows[1] = vec![BigInt::from(-a), BigInt::from(-b)];
    Bi::from_rows(rows).inverse().unwrap()
}

#[test]
fn first_counts() {
    assert_eq!(fe_class_b::counts(4).unwrap(), [1u64, 1, 2, 6, 22].map(nat));
}

#[test]
fn counts_match_golden() {
    assert_eq!(fe_class_b::counts(11).unwrap(), counts(CLASS_B_COUNTS));
}

#[test]
fn distribution_matches_trailing_marks() {
    let state = fe_class_b::iterate(10).unwrap();
    let fe = state.distribution().unwrap();
    assert!(tables_agree(&fe, &distribution(CLASS_B_MARKS), 10));
    // the catalytic variable is not the raw trailing run: 21 has run 1 but carries t^0
    assert!(!tables_agree(&fe, &distribution(CLASS_B_RUN), 10));
    assert_eq!(state.f.coeff(2, 0), BigInt::one());
}

#[test]
fn single_slice_series() {
    let s = fe_class_b::s_series(10);
    assert!(s.row(0).iter().all(Zero::is_zero));
    assert_eq!(s.row(1), &[BigInt::one()]);
    assert_eq!(s.row(2), &[BigInt::zero(), BigInt::one()]);
    let rows: Vec<Vec<BigUint>> =
        s.rows().iter().map(|r| r.iter().map(|c| c.to_biguint().unwrap()).collect()).collect();
    assert!(tables_agree(&rows, &distribution(CLASS_B_SINGLE_SLICE), 10));
}

#[test]
fn theta_examples() {
    let n = 6;
    assert!(fe_class_b::theta_apply(&Bi::one(n)).is_zero());
    assert_eq!(fe_class_b::theta_apply(&t_power(1, n)), t_power(1, n));
    let three = Bi::from_t_poly(&[0, 1, 1, 1].map(BigInt::from), n);
    assert_eq!(fe_class_b::theta_apply(&t_power(3, n)), three);
}

#[test]
fn phi_on_constant_is_s() {
    let n = 12;
    assert_eq!(fe_class_b::phi_apply(&Bi::one(n)), fe_class_b::s_series(n));
}

#[test]
fn empty_sums_vanish() {
    let n = 8;
    assert!(fe_class_b::psi_apply(&Bi::one(n)).is_zero());
    assert!(fe_class_b::xi_apply(&Bi::one(n)).is_zero());
}

#[test]
fn xi_lambda_on_t() {
    let n = 12;
    let img = fe_class_b::xi_apply(&fe_class_b::lambda_apply(&t_power(1, n)));
    assert_eq!(img.valuation(), Some(2));
    assert_eq!(img, fe_class_b::xi_lambda_prefactor(n));
    let expected = Bi::monomial(2, 1, BigInt::one(), n).mul_bi(&tz_inverse(2, 0, n)).mul_bi(&tz_inverse(0, 1, n));
    assert_eq!(img, expected);
}

#[test]
fn composites_match_compositions() {
    let state = fe_class_b::iterate(14).unwrap();
    let [_, b, c] = state.cases();
    assert_eq!(fe_class_b::psi_apply(&fe_class_b::theta_apply(&state.f)), b);
    assert_eq!(fe_class_b::xi_apply(&fe_class_b::lambda_apply(&state.f)), c);
    let op = MonomialOperator::new(OperatorKind::PsiTheta, 14);
    assert_eq!(op.kind(), OperatorKind::PsiTheta);
    assert_eq!(op.prefactor(), &fe_class_b::psi_prefactor(14));
}

#[test]
fn closed_forms_agree() {
    let state = fe_class_b::iterate(24).unwrap();
    let [a, b, c] = state.cases();
    assert_eq!(closed_form::g_a(&state).unwrap(), a);
    assert_eq!(closed_form::g_b(&state).unwrap(), b);
    let gc = closed_form::g_c(&state).unwrap();
    assert_eq!(gc.order(), 23);
    assert_eq!(gc, c.truncate(23));
}

#[test]
fn decomposition_identity() {
    let state = fe_class_b::iterate(20).unwrap();
    let cases = state.cases();
    let mut total = Bi::one(20);
    for g in &cases {
        assert!(g.all_coeffs(|c| !c.is_negative()));
        total = &total + g;
    }
    assert_eq!(total, state.f);
    assert!(state.f.all_coeffs(|c| !c.is_negative()));
}

#[test]
fn discrete_derivative_at_one() {
    let state = fe_class_b::iterate(16).unwrap();
    let th = fe_class_b::theta_apply(&state.f);
    let diff = &Bi::from_series(&th.subst_t_one()) - &th;
    let one_minus_t = Bi::from_t_poly(&[1, -1].map(BigInt::from), 16);
    let quotient = diff.div_exact(&one_minus_t).unwrap();
    assert_eq!(quotient.subst_t_one(), th.deriv_t_at_1());
}

#[test]
fn auxiliary_series_against_oracle_moments() {
    let state = fe_class_b::iterate(10).unwrap();
    let (f1, ft1, frecip) = state.auxiliary_series();
    let m = distribution(CLASS_B_MARKS);
    let big = |u: &BigUint| BigInt::from(u.clone());
    for n in 0..=10 {
        let row = &m[n];
        assert_eq!(f1.coeff(n), &row.iter().map(big).sum::<BigInt>());
        let first: BigInt = row.iter().enumerate().map(|(k, c)| big(c) * BigInt::from(k)).sum();
        assert_eq!(ft1.coeff(n), &first);
        // [z^n] Σ_{m,k} m[m][k] z^m (1−z)^(−k)
        let mut rec = BigInt::zero();
        for (len, r) in m.iter().enumerate().take(n + 1) {
            for (k, c) in r.iter().enumerate() {
                rec += big(c) * binomial_tail(n - len, k);
            }
        }
        assert_eq!(frecip.coeff(n), &rec, "n = {n}");
    }
    assert_eq!(f1.coeff(0), &BigInt::one());
    // the permutation 1 carries t^0, so f_t(z,1) starts at z^2
    assert_eq!(ft1.coeff(1), &BigInt::zero());
    assert_eq!(ft1.coeff(2), &BigInt::one());
}

/// `[z^d] (1 − z)^(−k)`
fn binomial_tail(d: usize, k: usize) -> BigInt {
    if k == 0 {
        return if d == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let mut acc = BigInt::one();
    for i in 0..d {
        acc = acc * BigInt::from(k + i) / BigInt::from(i + 1);
    }
    acc
}

#[test]
fn prefix_stability() {
    let small = fe_class_b::iterate(10).unwrap();
    let large = fe_class_b::iterate(18).unwrap();
    assert_eq!(large.f.truncate(10), small.f);
}
