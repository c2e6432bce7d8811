mod common;

use std::f64::consts::PI;

use common::oracles::{sin_gram, top_coefficient_oracle};
use lutz_core::analysis::{classify, Class};
use lutz_core::constructions::{
    blob, double, euler, giroux, locus_strata, lutz, omega_tw, otw, prelag, tube, tube_chart, tube_region, twist,
};
use lutz_core::scalar::NoEnv;
use lutz_core::{DifferentialForm, ScalarExpr};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRID: usize = 15;

fn tube_point(rng: &mut ChaCha8Rng, n: usize, rmax: f64) -> Vec<f64> {
    (0..=2 * n).map(|k| if k % 2 == 1 { rng.gen_range(0.05..rmax) } else { rng.gen_range(0.0..2.0 * PI) }).collect()
}

fn top_value(f: &DifferentialForm, p: &[f64]) -> f64 {
    f.evaluate(p).unwrap().first().map(|c| c.1).unwrap_or(0.0)
}

#[test]
fn standard_tube_volume_against_pfaffian() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=3 {
        let chart = tube_chart(n);
        let a = tube::xi0(&chart);
        let top = a.wedge(&a.ext_d().power(n).unwrap()).unwrap();
        let xi0 = |p: &[f64]| {
            let mut v = vec![0.0; p.len()];
            v[0] = 1.0;
            for i in 0..(p.len() - 1) / 2 {
                v[2 * i + 2] = p[2 * i + 1] * p[2 * i + 1];
            }
            v
        };
        for _ in 0..8 {
            let p = tube_point(&mut rng, n, 2.0);
            let want = top_coefficient_oracle(&xi0, &p);
            let got = top_value(&top, &p);
            assert!((got - want).abs() <= 1e-6 * want.abs().max(1.0), "n={n}: {got} vs {want}");
            // 2ⁿn!∏rᵢ by hand
            let hand = (1u64 << n) as f64
                * (1..=n).product::<usize>() as f64
                * (0..n).map(|i| p[2 * i + 1]).product::<f64>();
            assert!((got - hand).abs() <= 1e-9 * hand.max(1.0));
        }
        assert!(tube::verify_standard_tube(n, GRID).unwrap().passed());
    }
}

#[test]
fn lutz_confoliation_class_by_dimension() {
    for n in 1..=3 {
        let chart = tube_chart(n);
        let region = tube_region(&chart, PI.sqrt(), GRID).unwrap();
        let cls = classify(&omega_tw(&chart), &region).unwrap();
        let want = if n == 1 { Class::Contact } else { Class::Confoliation };
        assert_eq!(cls.class, want, "n={n}");
    }
}

#[test]
fn line_core_behaves_like_the_circle_core() {
    for n in 1..=3 {
        let circle = lutz::verify_lutz(n, lutz::Core::Circle, GRID).unwrap();
        let line = lutz::verify_lutz(n, lutz::Core::Line, GRID).unwrap();
        assert!(circle.passed() && line.passed(), "n={n}: {:?} {:?}", circle.failures(), line.failures());
        assert_eq!(circle.check("non-contact-locus").unwrap().passed(), line.check("non-contact-locus").unwrap().passed());
    }
}

#[test]
fn strata_count_is_a_binomial() {
    for n in 1..=5 {
        assert_eq!(locus_strata(n, PI.sqrt()).len(), n * (n - 1) / 2);
        // a wider tube picks up the next root √(3π/2) as well
        assert_eq!(locus_strata(n, (1.5 * PI).sqrt()).len(), 4 * n * (n - 1) / 2);
    }
}

#[test]
fn tau_vanishes_on_the_locus() {
    let chart = tube_chart(2);
    let g = lutz_core::DiagonalMetric::polar_area(&chart).unwrap();
    let t = lutz_core::analysis::tau(&omega_tw(&chart), &g).unwrap();
    let r = (PI / 2.0).sqrt();
    let vals = t.evaluate(&[0.3, r, 1.0, r, 2.0]).unwrap();
    assert!(vals.iter().all(|(_, v)| v.abs() < 1e-12), "{vals:?}");
    let off = t.evaluate(&[0.3, 0.5, 1.0, r, 2.0]).unwrap();
    assert!(off.iter().any(|(_, v)| v.abs() > 1e-3));
}

#[test]
fn blob_and_its_sabotaged_copy() {
    for n in 2..=3 {
        assert!(blob::verify_blob(n, blob::Variant::Standard).unwrap().passed());
        let bad = blob::verify_blob(n, blob::Variant::Sabotaged).unwrap();
        assert!(!bad.check("P-avoids-locus").unwrap().passed());
    }
    assert!(blob::page_form(2).unwrap().is_symbolic_zero());
}

#[test]
fn euler_sections() {
    for n in 1..=3 {
        let rep = euler::verify_euler_sections(n, GRID).unwrap();
        assert!(rep.passed(), "n={n}: {:?}", rep.failures());
    }
    let chart = tube_chart(2);
    let s2 = euler::sigma2(&chart);
    let pairing = omega_tw(&chart).interior(&s2).unwrap();
    assert!(pairing.is_symbolic_zero());
}

#[test]
fn double_faces_and_folds() {
    for n in 1..=3 {
        for k in 1..=2 {
            let rep = double::verify_double(n, k).unwrap();
            assert!(rep.passed(), "n={n} k={k}: {:?}", rep.failures());
        }
    }
    assert!(double::fold_radius(2).to_f64() > double::fold_radius(1).to_f64());
}

#[test]
fn giroux_determinant_against_gaussian_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=3 {
        let det = giroux::printed_det(n);
        for _ in 0..16 {
            let mut p = vec![0.0; 2 * n];
            for i in 0..n {
                p[2 * i] = rng.gen_range(-1.5..1.5);
            }
            let s: Vec<f64> = (0..n).map(|i| p[2 * i]).collect();
            let got = det.evaluate(&p).unwrap();
            assert!((got - sin_gram(&s)).abs() < 1e-12);
        }
    }
}

#[test]
fn giroux_contactization_volume_against_pfaffian() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 1..=3 {
        let a = giroux::contactization(n).unwrap();
        let top = a.wedge(&a.ext_d().power(n).unwrap()).unwrap();
        let alpha = move |p: &[f64]| {
            let mut v = vec![0.0; 2 * n + 1];
            v[2 * n] = (0..n).map(|i| p[2 * i].cos()).product();
            for i in 0..n {
                v[2 * i + 1] = p[2 * i].sin();
            }
            v
        };
        for _ in 0..8 {
            let mut p = vec![0.0; 2 * n + 1];
            for (k, x) in p.iter_mut().enumerate() {
                *x = if k % 2 == 0 && k < 2 * n { rng.gen_range(-1.5..1.5) } else { rng.gen_range(0.0..2.0 * PI) };
            }
            let want = top_coefficient_oracle(&alpha, &p);
            let s: Vec<f64> = (0..n).map(|i| p[2 * i]).collect();
            let nf = (1..=n).product::<usize>() as f64;
            assert!((top_value(&top, &p) - want).abs() < 1e-6);
            assert!((want - nf * sin_gram(&s)).abs() < 1e-6);
        }
        assert!(giroux::verify_giroux(n.min(2), GRID).unwrap().passed());
    }
}

#[test]
fn giroux_interior_needs_a_positive_margin() {
    let chart = giroux::sigma_chart(1, false);
    assert!(giroux::interior_region(&chart, 0.0, 5).is_err());
    assert!(giroux::interior_region(&chart, 1e-3, 5).is_ok());
}

#[test]
fn prelag_blowup() {
    for n in 1..=3 {
        let rep = prelag::verify_prelag(n).unwrap();
        assert!(rep.passed(), "n={n}: {:?}", rep.failures());
    }
}

#[test]
fn full_twist_endpoints_and_identity() {
    for n in 1..=2 {
        let rep = twist::verify_full_twist(n, GRID).unwrap();
        for c in ["coefficient-identity", "hat-term", "endpoint-t=0", "endpoint-t=1", "blend-degenerations", "blend-classes"] {
            assert!(rep.check(c).unwrap().passed(), "n={n}: {c}");
        }
    }
    let rep = twist::verify_full_twist(1, GRID).unwrap();
    let lit = rep.check("coefficient-identity").unwrap().payload.get("literal_match").cloned();
    assert_eq!(lit, Some(lutz_core::report::Datum::Bool(true)));
}

#[test]
fn twist_coefficient_vanishes_at_the_recorded_point() {
    let chart = twist::chart(2);
    let c = twist::twist_coefficient(&chart).unwrap();
    let r = 1.0 / 3f64.sqrt();
    for a in [0.0, 10.0, 1e4] {
        let v = c.evaluate_in(&[0.0, r, 0.0, r, 0.0], &twist::AngleCurves { t: 1.0, a }).unwrap();
        assert!(v.abs() < 1e-9, "A={a}: {v}");
    }
    let inside = c.evaluate_in(&[0.0, 0.3, 0.0, 0.4, 0.0], &twist::AngleCurves { t: 0.5, a: 10.0 }).unwrap();
    assert!(inside.is_finite());
}

#[test]
fn otw_model() {
    for n in 1..=3 {
        let rep = otw::verify_otw(n, otw::DEFAULT_EPSILON, otw::DEFAULT_C, GRID).unwrap();
        assert!(rep.passed(), "n={n}: {:?}", rep.failures());
    }
    let chart = otw::otw_chart(2);
    assert!(otw::standard_alpha(&chart, 0).ext_d().ext_d().is_symbolic_zero());
    assert!(otw::verify_otw(0, otw::DEFAULT_EPSILON, otw::DEFAULT_C, GRID).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn big_k_is_bounded_below_by_minus_one(z in -1.0f64..1.0, sum in 0.0f64..1.0) {
        let k = otw::big_k(otw::DEFAULT_EPSILON, z, sum);
        prop_assert!(k >= -1.0 - 1e-15);
        prop_assert!(otw::big_k(otw::DEFAULT_EPSILON, 1.0, sum) > 0.0);
    }

    #[test]
    fn rho_profiles_meet_their_end_conditions(k in -1.0f64..0.0, c in 1.5f64..4.0, x in 0.0f64..1.0) {
        let rho = otw::rho_profile(k, c).unwrap();
        let l = k + c;
        prop_assert!((rho.value(0.002 * x) - 0.002 * x).abs() < 1e-12);
        prop_assert!((rho.value(l + x) - (l + x - c)).abs() < 1e-9);
        prop_assert!(rho.continuity_defect() < 1e-9);
    }
}

#[test]
fn otw_disc_minimum_is_at_the_origin() {
    assert_eq!(otw::big_k(otw::DEFAULT_EPSILON, 0.0, 0.0), -1.0);
    assert!(otw::rho_profile(-1.0, 0.5).is_err());
}

#[test]
fn omega_tw_matches_its_formula() {
    let chart = tube_chart(2);
    let w = omega_tw(&chart);
    let p = [0.1, 0.7, 0.2, 1.1, 0.3];
    let comps: std::collections::BTreeMap<u32, f64> = w.evaluate(&p).unwrap().into_iter().collect();
    assert!((comps[&1] - (0.49f64.cos() * 1.21f64.cos())).abs() < 1e-14);
    assert!((comps[&(1 << 2)] - 0.49f64.sin()).abs() < 1e-14);
    assert!((comps[&(1 << 4)] - 1.21f64.sin()).abs() < 1e-14);
    let one = ScalarExpr::one().evaluate_in(&p, &NoEnv).unwrap();
    assert_eq!(one, 1.0);
}
