mod common;

use common::calculus::{sample_points, scalar};
use lutz_core::scalar::{factorial, q, qr, Arg, Base, NoEnv};
use lutz_core::{ScalarExpr, Value};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_laws(f in scalar(), g in scalar(), h in scalar()) {
        prop_assert!((&(&f + &g) - &g - f.clone()).is_symbolic_zero());
        prop_assert!((&(&f * &g) - &(&g * &f)).is_symbolic_zero());
        prop_assert!((&(&(&f * &g) * &h) - &(&f * &(&g * &h))).is_symbolic_zero());
        prop_assert!((&(&f * &(&g + &h)) - &(&(&f * &g) + &(&f * &h))).is_symbolic_zero());
    }

    #[test]
    fn product_rule(f in scalar(), g in scalar(), i in 0usize..4) {
        let lhs = (&f * &g).differentiate(i);
        let rhs = &(&f.differentiate(i) * &g) + &(&f * &g.differentiate(i));
        prop_assert!((&lhs - &rhs).is_symbolic_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in scalar(), g in scalar(), seed in any::<u64>()) {
        for p in sample_points(seed).iter().take(4) {
            let (a, b) = (f.evaluate(p).unwrap(), g.evaluate(p).unwrap());
            prop_assert!(close((&f + &g).evaluate(p).unwrap(), a + b));
            prop_assert!(close((&f * &g).evaluate(p).unwrap(), a * b));
        }
    }

    #[test]
    fn derivative_matches_central_differences(f in scalar(), i in 0usize..4, seed in any::<u64>()) {
        let h = 1e-5;
        let d = f.differentiate(i);
        for p in sample_points(seed).iter().take(4) {
            let (mut a, mut b) = (p.clone(), p.clone());
            a[i] += h;
            b[i] -= h;
            let fd = (f.evaluate(&a).unwrap() - f.evaluate(&b).unwrap()) / (2.0 * h);
            let exact = d.evaluate(p).unwrap();
            prop_assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1.0), "{fd} vs {exact}");
        }
    }

    #[test]
    fn canonical_form_is_unique(f in scalar(), g in scalar()) {
        let a = &f + &g;
        let b = &g + &f;
        prop_assert_eq!(a.terms(), b.terms());
    }
}

#[test]
fn pythagorean_identities_collapse() {
    let x = 2;
    let one = &ScalarExpr::sin(x).pow(2) + &ScalarExpr::cos(x).pow(2);
    assert_eq!(one.as_constant(), Some(q(1)));
    let r = 1;
    let one_sq = &ScalarExpr::sin_sq(r).pow(2) + &ScalarExpr::cos_sq(r).pow(2);
    assert_eq!(one_sq.as_constant(), Some(q(1)));
    let mixed = &(&ScalarExpr::sin(x).pow(4) - &ScalarExpr::cos(x).pow(4)) - &(&ScalarExpr::sin(x).pow(2) - &ScalarExpr::cos(x).pow(2));
    assert!(mixed.is_symbolic_zero());
}

#[test]
fn chain_rule_on_squared_arguments() {
    // d/dr cos(r²) = −2r sin(r²)
    let d = ScalarExpr::cos_sq(1).differentiate(1);
    let want = (&ScalarExpr::coord(1) * &ScalarExpr::sin_sq(1)).scale(&q(-2));
    assert!((&d - &want).is_symbolic_zero());
}

#[test]
fn inverse_of_monomials() {
    let m = (&ScalarExpr::coord(1) * &ScalarExpr::cos(2)).scale(&qr(3, 2));
    let inv = m.inverse().unwrap();
    assert_eq!((&m * &inv).as_constant(), Some(q(1)));
    assert!((&ScalarExpr::coord(1) + &ScalarExpr::one()).inverse().is_err());
}

#[test]
fn exact_substitution() {
    let f = &ScalarExpr::sin(0) * &ScalarExpr::cos_sq(1);
    let at = f.substitute(0, &Value::PiMultiple(qr(1, 2))).unwrap();
    assert!((&at - &ScalarExpr::cos_sq(1)).is_symbolic_zero());
    let zero = f.substitute(0, &Value::int(0)).unwrap();
    assert!(zero.is_symbolic_zero());
}

#[test]
fn profiles_stay_opaque_until_bound() {
    let p = ScalarExpr::profile(0, 0, Arg::Coord(1));
    assert_eq!(p.differentiate(1), ScalarExpr::profile(0, 1, Arg::Coord(1)));
    assert!(p.evaluate_in(&[0.0, 1.0], &NoEnv).is_err());
    assert!(matches!(ScalarExpr::atom(Base::Coord(0), 1).terms()[0].0[0].base, Base::Coord(0)));
}

#[test]
fn factorials() {
    assert_eq!(factorial(0), q(1));
    assert_eq!(factorial(5), q(120));
}
