use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use permclass::algebraic::verify_annihilation;
use permclass::seriesalg::{newton_series_root, poly_eval_series, rat, resultant, SeriesValue};
use permclass::{BiSeries, MPoly, Series};
use proptest::prelude::*;

const ORDER: usize = 8;

fn series() -> impl Strategy<Value = Series<BigRational>> {
    prop::collection::vec(-5i64..=5, ORDER + 1).prop_map(|v| Series::<BigRational>::from_i64s(ORDER, &v))
}

fn unit_series() -> impl Strategy<Value = Series<BigRational>> {
    (prop::sample::select(vec![-3i64, -1, 1, 2]), series()).prop_map(|(c, s)| {
        let mut cs = s.into_coeffs();
        cs[0] = rat(c, 1);
        Series::from_coeffs(cs)
    })
}

fn bi() -> impl Strategy<Value = BiSeries<BigInt>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, 0..4), ORDER + 1).prop_map(|rows| {
        BiSeries::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
    })
}

/// A polynomial in `y` and `x` with small integer coefficients, whose leading
/// `y`-coefficient is a nonzero constant.
fn yx_poly(max_dy: usize) -> impl Strategy<Value = MPoly> {
    (1..=max_dy)
        .prop_flat_map(|dy| {
            (prop::collection::vec((-3i64..=3, -3i64..=3), dy), prop::sample::select(vec![-2i64, -1, 1, 3]))
        })
        .prop_map(|(lower, lead)| {
            let mut terms: Vec<(BigInt, Vec<(&str, u32)>)> = Vec::new();
            let dy = lower.len() as u32;
            terms.push((BigInt::from(lead), vec![("y", dy)]));
            for (i, (c0, c1)) in lower.into_iter().enumerate() {
                terms.push((BigInt::from(c0), vec![("y", i as u32)]));
                terms.push((BigInt::from(c1), vec![("y", i as u32), ("x", 1)]));
            }
            MPoly::from_terms(terms)
        })
}

fn complex_roots(coeffs: &[f64]) -> Vec<Complex64> {
    // Durand–Kerner on the monic normalization
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, &c| acc * x + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..500 {
        for i in 0..n {
            let mut den = Complex64::one();
            for j in 0..n {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / den;
            roots[i] -= step;
        }
    }
    roots
}

fn at_x(p: &MPoly, x: i64) -> Vec<f64> {
    let mut p = p.clone();
    if p.vars().iter().any(|v| v == "x") {
        p = p.substitute("x", &MPoly::constant(x));
    }
    p.to_univariate("y").unwrap().iter().map(|c| c.to_f64().unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Series::zero(ORDER));
        prop_assert_eq!(&a * &Series::one(ORDER), a.clone());
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series()) {
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, Series::one(ORDER));
        prop_assert_eq!(inv.inverse().unwrap(), a);
    }

    #[test]
    fn deriv_t_leibniz(a in bi(), b in bi()) {
        let lhs = (&a * &b).deriv_t();
        let rhs = &(&a.deriv_t() * &b) + &(&a * &b.deriv_t());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn subst_t_is_linear(a in bi(), b in bi(), v in prop::collection::vec(-3i64..=3, 1..4)) {
        let v = Series::from_i64s(ORDER, &v);
        prop_assert_eq!((&a + &b).subst_t(&v), &a.subst_t(&v) + &b.subst_t(&v));
        prop_assert_eq!(a.subst_t(&Series::one(ORDER)), a.subst_t_one());
    }

    #[test]
    fn subst_t_is_multiplicative(a in bi(), b in bi(), v in prop::collection::vec(-3i64..=3, 1..4)) {
        let v = Series::from_i64s(ORDER, &v);
        prop_assert_eq!((&a * &b).subst_t(&v), &a.subst_t(&v) * &b.subst_t(&v));
    }

    #[test]
    fn newton_root_annihilates(t0 in -3i64..=3, u0 in prop::sample::select(vec![-2i64, -1, 1, 2]), v in prop::collection::vec(-3i64..=3, 4)) {
        // P = (t − t0)·(u0 + z·t) + z·(v0 + v1·t + v2·z + v3·t²)
        let lin: MPoly = format!("1:t {}:1", -t0).parse().unwrap();
        let unit: MPoly = format!("{u0}:1 1:z*t").parse().unwrap();
        let p = &(&lin * &unit) + &MPoly::from_terms([
            (BigInt::from(v[0]), vec![("z", 1)]),
            (BigInt::from(v[1]), vec![("z", 1), ("t", 1)]),
            (BigInt::from(v[2]), vec![("z", 2)]),
            (BigInt::from(v[3]), vec![("z", 1), ("t", 2)]),
        ]);
        let root = newton_series_root(&p, "z", "t", &rat(t0, 1), 12).unwrap();
        prop_assert_eq!(root.coeff(0), &rat(t0, 1));
        let mut a = BTreeMap::new();
        a.insert("z".to_string(), SeriesValue::Uni(Series::z(12)));
        a.insert("t".to_string(), SeriesValue::Uni(root));
        prop_assert_eq!(verify_annihilation(&p, &a, 12).unwrap(), 13);
    }

    #[test]
    fn resultant_antisymmetry(p in yx_poly(3), q in yx_poly(3)) {
        let dp = p.degree_in("y").unwrap();
        let dq = q.degree_in("y").unwrap();
        let rpq = resultant(&p, &q, "y").unwrap();
        let rqp = resultant(&q, &p, "y").unwrap();
        let sign = if (dp * dq) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(rpq, rqp.scale(&sign));
    }

    #[test]
    fn resultant_degree_bound(p in yx_poly(3), q in yx_poly(3)) {
        let r = resultant(&p, &q, "y").unwrap();
        let bound = p.degree_in("y").unwrap() * q.degree_in("x").unwrap_or(0)
            + q.degree_in("y").unwrap() * p.degree_in("x").unwrap_or(0);
        prop_assert!(r.degree_in("x").unwrap_or(0) <= bound);
    }

    #[test]
    fn resultant_is_product_over_roots(p in yx_poly(3), q in yx_poly(2), x in -2i64..=2) {
        // Res(p, q)(x) = lc(p)^deg q · Π q(α) over the roots α of p(·, x)
        let pc = at_x(&p, x);
        let qc = at_x(&q, x);
        let roots = complex_roots(&pc);
        let mut expected = Complex64::new(pc[pc.len() - 1], 0.0).powu((qc.len() - 1) as u32);
        for r in roots {
            expected *= qc.iter().rev().fold(Complex64::zero(), |acc, &c| acc * r + c);
        }
        let res = resultant(&p, &q, "y").unwrap();
        let mut vals = BTreeMap::new();
        vals.insert("x".to_string(), x as f64);
        let got = res.eval_f64(&vals).unwrap();
        prop_assert!((got - expected.re).abs() <= 1e-6 * (1.0 + got.abs()), "{got} vs {expected}");
        prop_assert!(expected.im.abs() <= 1e-6 * (1.0 + got.abs()));
    }

    #[test]
    fn common_factor_kills_resultant(p in yx_poly(2), q in yx_poly(2), a in -3i64..=3) {
        let f: MPoly = format!("1:y {}:x", -a).parse().unwrap();
        prop_assert!(resultant(&(&p * &f), &(&q * &f), "y").unwrap().is_zero());
    }

    #[test]
    fn term_list_round_trip(p in yx_poly(3)) {
        prop_assert_eq!(p.to_term_list().parse::<MPoly>().unwrap(), p);
    }

    #[test]
    fn series_evaluation_is_a_homomorphism(p in yx_poly(2), q in yx_poly(2), s in series()) {
        let mut a = BTreeMap::new();
        a.insert("x".to_string(), SeriesValue::Uni(Series::<BigRational>::z(ORDER)));
        a.insert("y".to_string(), SeriesValue::Uni(s));
        let ev = |m: &MPoly| poly_eval_series(m, &a).unwrap().into_uni().unwrap();
        prop_assert_eq!(ev(&(&p * &q)), &ev(&p) * &ev(&q));
        prop_assert_eq!(ev(&(&p + &q)), &ev(&p) + &ev(&q));
    }
}

#[test]
fn newton_rejects_ramified_root() {
    let p: MPoly = "1:t^2 -1:z".parse().unwrap();
    assert!(newton_series_root(&p, "z", "t", &rat(0, 1), 5).is_err());
}

#[test]
fn catalan_by_newton() {
    // z t² − t + 1
    let p: MPoly = "1:z*t^2 -1:t 1:1".parse().unwrap();
    let c = newton_series_root(&p, "z", "t", &rat(1, 1), 10).unwrap();
    let expect = [1i64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    assert_eq!(c, Series::<BigInt>::from_i64s(10, &expect).to_rational());
}
