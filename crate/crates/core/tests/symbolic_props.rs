use std::collections::BTreeMap;

use dalembert_reduce::symbolic::{evaluate, int_point, is_zero, point, Value, ZeroVerdict};
use dalembert_reduce::{parse, Expr, SamplePlan, Var, VariableSpace};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

const VARS: [Var; 4] = [Var::X(0), Var::X(1), Var::X(2), Var::X(3)];

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![(-4i64..=4).prop_map(Expr::int), (0usize..4).prop_map(|i| Expr::var(VARS[i])),]
}

/// Polynomials in x0..x3 with small integer coefficients.
fn polynomial() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner, 2i64..=3).prop_map(|(a, k)| a.powi(k)),
        ]
    })
}

/// Adds sin, cos and exp on top of polynomials.
fn expression() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 20, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            inner.clone().prop_map(|a| a.sin()),
            inner.clone().prop_map(|a| a.cos()),
            inner.prop_map(|a| (a * Expr::ratio(1, 4)).exp()),
        ]
    })
}

fn zero(e: &Expr, plan: &SamplePlan) -> bool {
    matches!(is_zero(e, plan), Ok(v) if v.is_zero())
}

fn plan() -> SamplePlan {
    SamplePlan::default().with_count(16)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, rng_seed: RngSeed::Fixed(1990), ..ProptestConfig::default() })]

    #[test]
    fn differentiation_is_linear(a in expression(), b in expression(), alpha in -5i64..=5, beta in -5i64..=5, k in 0usize..4) {
        let x = VARS[k];
        let (al, be) = (Expr::int(alpha), Expr::int(beta));
        let lhs = (al.clone() * a.clone() + be.clone() * b.clone()).diff(x);
        let rhs = al * a.diff(x) + be * b.diff(x);
        prop_assert!(zero(&(lhs - rhs), &plan()));
    }

    #[test]
    fn product_rule(a in expression(), b in expression(), k in 0usize..4) {
        let x = VARS[k];
        let lhs = (a.clone() * b.clone()).diff(x);
        let rhs = a.diff(x) * b.clone() + a * b.diff(x);
        prop_assert!(zero(&(lhs - rhs), &plan()));
    }

    #[test]
    fn evaluate_after_substitute(e in polynomial(), g0 in polynomial(), g3 in polynomial(), p in proptest::array::uniform4(-6i64..=6)) {
        let at = int_point(&[(VARS[0], p[0]), (VARS[1], p[1]), (VARS[2], p[2]), (VARS[3], p[3])]);
        let bound = e.substitute(&BTreeMap::from([(VARS[0], g0.clone()), (VARS[3], g3.clone())]));
        let exact = |v: Value| v.as_exact().cloned().expect("polynomials evaluate exactly");
        let mut merged = at.clone();
        merged.insert(VARS[0], exact(evaluate(&g0, &at).unwrap()));
        merged.insert(VARS[3], exact(evaluate(&g3, &at).unwrap()));
        prop_assert_eq!(exact(evaluate(&bound, &at).unwrap()), exact(evaluate(&e, &merged).unwrap()));
    }

    #[test]
    fn print_then_parse(e in expression()) {
        let back = parse(&e.to_string(), &VariableSpace::default()).unwrap();
        prop_assert!(zero(&(back - e), &SamplePlan::default().with_count(10)));
    }

    /// A nonzero univariate polynomial of degree d has at most d roots, so
    /// exact sampling at d + 1 points must find a witness.
    #[test]
    fn degree_plus_one_samples_decide(coeffs in proptest::collection::vec(-9i64..=9, 1..7), seed in 0u64..1000) {
        prop_assume!(coeffs.iter().any(|c| *c != 0));
        let x = Expr::var(VARS[0]);
        let poly = Expr::sum(coeffs.iter().enumerate().map(|(k, c)| Expr::int(*c) * x.powi(k as i64)));
        let horner = coeffs.iter().rev().fold(Expr::zero(), |acc, c| acc * x.clone() + Expr::int(*c));
        let plan = SamplePlan::default().with_seed(seed).with_count(coeffs.len());
        prop_assert!(zero(&(poly.clone() - horner), &plan));
        let verdict = is_zero(&poly, &plan).unwrap();
        let is_nonzero = matches!(verdict, ZeroVerdict::Nonzero { .. });
        prop_assert!(is_nonzero);
    }
}

#[test]
fn radial_derivative_matches_finite_differences() {
    let space = VariableSpace::default();
    let r = parse("sqrt(x1^2 + x2^2 + x3^2)", &space).unwrap();
    let d = r.diff(Var::X(1));
    let f = |x: [f64; 3]| (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    for i in 0..20 {
        let x = [0.3 + 0.11 * i as f64, -1.2 + 0.07 * i as f64, 0.9 - 0.05 * i as f64];
        let step = 1e-5;
        let fd = (f([x[0] + step, x[1], x[2]]) - f([x[0] - step, x[1], x[2]])) / (2.0 * step);
        let q = |v: f64| BigRational::from_float(v).unwrap();
        let at = point([(Var::X(1), q(x[0])), (Var::X(2), q(x[1])), (Var::X(3), q(x[2]))]);
        let exact = evaluate(&d, &at).unwrap().to_f64();
        assert!(((exact - fd) / fd).abs() < 1e-8, "{exact} vs {fd}");
    }
}

#[test]
fn radial_laplacian_identity_is_sampled_zero() {
    let space = VariableSpace::default();
    let r = parse("sqrt(x1^2 + x2^2 + x3^2)", &space).unwrap();
    let e = dalembert_reduce::minkowski::dalembertian(&r, &space) + Expr::int(2) / r.clone();
    let v = is_zero(&e, &SamplePlan::default().exclude(r)).unwrap();
    assert!(v.is_zero(), "{v:?}");
}

#[test]
fn exact_points_stay_exact() {
    let e = parse("x0^2 - x3^2", &VariableSpace::default()).unwrap();
    let v = evaluate(&e, &int_point(&[(Var::X(0), 3), (Var::X(3), 2)])).unwrap();
    assert_eq!(v.as_exact(), Some(&BigRational::from_integer(BigInt::from(5))));
}
