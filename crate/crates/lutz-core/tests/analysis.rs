use std::f64::consts::PI;
use std::sync::Arc;

use lutz_core::analysis::{
    blend, char_foliation, classify, contact_ratio, Axis, Class, Level, Region, Spacing,
};
use lutz_core::constructions::{omega_tw, tube, tube_chart, tube_region};
use lutz_core::{Chart, CoordKind, DifferentialForm, ScalarExpr, Value};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn axis_index_round_trip(lo in 0.0f64..1.0, width in 0.5f64..3.0, points in 2usize..60, k in 0usize..60) {
        let k = k % points;
        for spacing in [Spacing::Uniform, Spacing::SquareUniform, Spacing::Periodic] {
            let a = Axis { lo, hi: lo + width, points, spacing };
            let v = a.value(k);
            prop_assert!((a.frac_index(v) - k as f64).abs() < 1e-9);
            prop_assert!(a.contains(v));
        }
    }
}

#[test]
fn square_uniform_axes_are_even_in_r_squared() {
    let a = Axis { lo: 0.0, hi: PI.sqrt(), points: 5, spacing: Spacing::SquareUniform };
    for k in 0..5 {
        assert!((a.value(k).powi(2) - PI * k as f64 / 4.0).abs() < 1e-12);
    }
}

#[test]
fn constraints_drop_samples() {
    let chart = Arc::new(Chart::new(vec![("x", CoordKind::Linear), ("y", CoordKind::Linear)]).unwrap());
    let full = Region::new(&chart).with_bounds(0, -1.0, 1.0).unwrap().with_bounds(1, -1.0, 1.0).unwrap().with_resolution(11);
    // 1 − x² − y² ≥ 0
    let disc = full.clone().with_constraint(
        &(&ScalarExpr::one() - &ScalarExpr::coord(0).pow(2)) - &ScalarExpr::coord(1).pow(2),
    );
    let (a, b) = (full.samples(0b11).len(), disc.samples(0b11).len());
    assert_eq!(a, 121);
    assert!(b < a && b > 0);
    assert!(disc.samples(0b11).iter().all(|s| s.point[0].powi(2) + s.point[1].powi(2) <= 1.0 + 1e-12));
    assert!(full.clone().with_bounds(0, 1.0, -1.0).is_err());
}

#[test]
fn classification_of_signed_forms() {
    let chart = tube_chart(1);
    let region = tube_region(&chart, 1.5, 11).unwrap();
    assert_eq!(classify(&tube::xi0(&chart), &region).unwrap().class, Class::Contact);
    let neg = DifferentialForm::one_form(&chart, vec![(0, ScalarExpr::one()), (2, -ScalarExpr::coord(1).pow(2))]).unwrap();
    assert_eq!(classify(&neg, &region).unwrap().class, Class::Neither);
    let foliation = DifferentialForm::one_form(&chart, vec![(0, ScalarExpr::one())]).unwrap();
    assert_eq!(classify(&foliation, &region).unwrap().class, Class::Confoliation);
    let two_form = foliation.ext_d();
    assert!(classify(&two_form, &region).is_err());
}

#[test]
fn contact_ratio_of_the_standard_form() {
    for n in 1..=3 {
        let chart = tube_chart(n);
        let region = tube_region(&chart, 1.0, 5).unwrap();
        let r = contact_ratio(&tube::xi0(&chart), &region).unwrap();
        let want = (1i64 << n) * (1..=n as i64).product::<i64>();
        assert_eq!(r.as_constant(), Some(lutz_core::scalar::q(want)));
    }
}

#[test]
fn blends_interpolate_between_their_ends() {
    let chart = tube_chart(1);
    let region = tube_region(&chart, PI.sqrt(), 11).unwrap();
    let (a, b) = (tube::xi0(&chart), omega_tw(&chart));
    let half = ScalarExpr::constant(lutz_core::scalar::qr(1, 2));
    let (mid, _) = blend(&a, &b, &half, &region).unwrap();
    let want = a.scale(&half).add(&b.scale(&half)).unwrap();
    assert!(mid.same_as(&want).unwrap());
}

#[test]
fn characteristic_foliation_of_a_sphere_level() {
    // ξ₀ on {r₁ = 1} of the 3-dimensional tube: the field spans ker α ∩ T{r₁ = 1}.
    let chart = tube_chart(1);
    let a = tube::xi0(&chart);
    let level = Level::new(1, Value::int(1));
    let sub = a.restrict(&[(1, Value::int(1))]).unwrap().chart().clone();
    let vol = DifferentialForm::volume(&sub);
    let v = char_foliation(&a, &level, &vol).unwrap();
    let restricted = a.restrict(&[(1, Value::int(1))]).unwrap();
    assert!(restricted.interior(&v).unwrap().is_symbolic_zero());
    assert!(!v.is_symbolic_zero());
}
