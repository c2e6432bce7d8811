//! The ideal Liouville domain Σ²ⁿ = (−π/2, π/2)ⁿ × Tⁿ, β = (∏cos sᵢ)⁻¹Σ sin sⱼ dθⱼ,
//! and its contactization.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use super::{check_dim, NamedConstruction};
use crate::analysis::{classify, scan, Region, POSITIVITY_TOL};
use crate::chart::{Chart, CoordKind};
use crate::error::{Error, Result};
use crate::forms::{ChartRef, DifferentialForm};
use crate::report::{Check, ConstructionReport, Params};
use crate::scalar::{factorial, qr, NoEnv, ScalarExpr, Value};

pub const MARGIN: f64 = 1e-3;

fn si(i: usize) -> usize {
    2 * i
}

fn ti(i: usize) -> usize {
    2 * i + 1
}

/// (s₁, θ₁, …, sₙ, θₙ), and with `fiber` a trailing φ.
pub fn sigma_chart(n: usize, fiber: bool) -> ChartRef {
    let names: Vec<(String, CoordKind)> = (0..n)
        .flat_map(|i| {
            [
                (format!("s{}", i + 1), CoordKind::BoundedLinear(-FRAC_PI_2, FRAC_PI_2)),
                (format!("th{}", i + 1), CoordKind::Angle),
            ]
        })
        .chain(fiber.then(|| (String::from("phi"), CoordKind::Angle)))
        .collect();
    Arc::new(Chart::new(names.iter().map(|(s, k)| (s.as_str(), *k)).collect()).expect("distinct names"))
}

/// f = ∏cos sᵢ.
pub fn boundary_function(n: usize) -> ScalarExpr {
    let c: Vec<ScalarExpr> = (0..n).map(|i| ScalarExpr::cos(si(i))).collect();
    ScalarExpr::product(c.iter())
}

pub fn beta(chart: &ChartRef) -> DifferentialForm {
    let n = chart.dim() / 2;
    let inv = boundary_function(n).inverse().expect("monomial");
    DifferentialForm::one_form(chart, (0..n).map(|j| (ti(j), &inv * &ScalarExpr::sin(si(j)))).collect())
        .expect("sigma chart")
}

/// (∏cos)⁻¹{Σ (1/cos sⱼ)dsⱼ∧dθⱼ + Σ_{k≠l}(sin sₖ sin sₗ/cos sₗ)dsₗ∧dθₖ}.
pub fn printed_omega(chart: &ChartRef) -> Result<DifferentialForm> {
    let n = chart.dim() / 2;
    let inv = boundary_function(n).inverse()?;
    let mut terms = Vec::new();
    for l in 0..n {
        let sec = ScalarExpr::cos(si(l)).inverse()?;
        for k in 0..n {
            let c = if k == l { sec.clone() } else { &(&ScalarExpr::sin(si(k)) * &ScalarExpr::sin(si(l))) * &sec };
            terms.push((alloc::vec![si(l), ti(k)], &inv * &c));
        }
    }
    DifferentialForm::from_terms(chart, 2, terms)
}

/// det of the matrix with 1 on the diagonal and sin sₖ sin sₗ off it,
/// by Leibniz expansion.
pub fn printed_det(n: usize) -> ScalarExpr {
    let entry = |l: usize, k: usize| {
        if k == l {
            ScalarExpr::one()
        } else {
            &ScalarExpr::sin(si(k)) * &ScalarExpr::sin(si(l))
        }
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = ScalarExpr::zero();
    permute(&mut perm, 0, &mut |p| {
        let sign = permutation_sign(p);
        let parts: Vec<ScalarExpr> = (0..n).map(|l| entry(l, p[l])).collect();
        total = &total + &ScalarExpr::product(parts.iter()).scale(&qr(sign, 1));
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The interior box with `margin` away from cos sᵢ = 0.
pub fn interior_region(chart: &ChartRef, margin: f64, points: usize) -> Result<Region> {
    if margin <= 0.0 {
        return Err(Error::PoleOnRegion(format!("margin {margin} reaches cos s = 0")));
    }
    let n = chart.dim() / 2;
    let mut reg = Region::new(chart).with_resolution(points);
    for i in 0..n {
        reg = reg.with_bounds(si(i), -FRAC_PI_2 + margin, FRAC_PI_2 - margin)?;
    }
    Ok(reg)
}

/// ∏cos sᵢ dφ + Σ sin sᵢ dθᵢ on Σ × S¹.
pub fn contactization(n: usize) -> Result<DifferentialForm> {
    let chart = sigma_chart(n, true);
    let f = boundary_function(n);
    let fb = beta(&chart).scale(&f);
    DifferentialForm::one_form(&chart, alloc::vec![(2 * n, f)])?.add(&fb)
}

pub fn make_giroux_domain(n: usize, grid: usize) -> Result<NamedConstruction> {
    check_dim(n)?;
    let chart = sigma_chart(n, false);
    let mut nc = NamedConstruction::new("giroux-domain", &chart);
    let b = beta(&chart);
    nc.forms.push(("omega".into(), b.ext_d()));
    nc.forms.push(("beta".into(), b));
    nc.regions.push(("interior".into(), interior_region(&chart, MARGIN, grid)?));
    Ok(nc)
}

pub fn verify_giroux(n: usize, grid: usize) -> Result<ConstructionReport> {
    let nc = make_giroux_domain(n, grid)?;
    let chart = nc.chart.clone();
    let mut rep = ConstructionReport::new("giroux-domain", Params::new(n, grid));
    let omega = nc.form("omega").expect("built").clone();
    rep.push(Check::symbolic("omega-is-d-beta", omega.same_as(&printed_omega(&chart)?)?));

    let top = omega.power(n)?;
    let vol = DifferentialForm::volume(&chart);
    let ratio = top.top_ratio(&vol)?;
    let det = printed_det(n);
    let pole = boundary_function(n).pow(n as u32 + 1).inverse()?;
    let expected = (&pole * &det).scale(&factorial(n));
    rep.push(Check::symbolic("omega-power", (&ratio - &expected).is_symbolic_zero()).with("terms", ratio.num_terms()));

    // det = ∏cos²sᵢ·(1 + Σtan²sᵢ): scan det/∏cos²sᵢ, whose size does not
    // collapse near the corners, and report the raw minimum alongside.
    let region = nc.region("interior").expect("built");
    let normalized = &det * &boundary_function(n).pow(2).inverse()?;
    let samples = region.samples(det.dependencies());
    let raw = scan(&samples, POSITIVITY_TOL, |p| det.evaluate_in(p, &NoEnv))?;
    let sc = scan(&samples, POSITIVITY_TOL, |p| normalized.evaluate_in(p, &NoEnv))?;
    let det_ok = sc.min > POSITIVITY_TOL && raw.min > 0.0;
    rep.push(
        Check::grid("determinant-positive", det_ok)
            .with("margin", MARGIN)
            .with("samples", sc.count)
            .with("min_normalized", sc.min)
            .with("min", raw.min)
            .with("max", raw.max),
    );

    // f·β extends over the boundary.
    let fb = nc.form("beta").expect("built").scale(&boundary_function(n));
    let pole_free = fb.components().values().all(|c| c.terms().iter().all(|(m, _)| m.iter().all(|a| a.exp >= 0)));
    let mut faces_ok = true;
    for i in 0..n {
        for sign in [1i64, -1] {
            let face = fb.restrict(&[(si(i), Value::PiMultiple(qr(sign, 2)))])?;
            let mut expect = alloc::vec![(ti(i), ScalarExpr::int(sign))];
            for j in (0..n).filter(|&j| j != i) {
                expect.push((ti(j), ScalarExpr::sin(si(j))));
            }
            let e = DifferentialForm::one_form(&chart, expect)?.restrict(&[(si(i), Value::int(0))])?;
            faces_ok &= face.same_as(&e)?;
        }
    }
    rep.push(Check::symbolic("ideal-boundary-extension", pole_free && faces_ok));

    let ctz = contactization(n)?;
    let cchart = ctz.chart().clone();
    let mut expect = alloc::vec![(2 * n, boundary_function(n))];
    expect.extend((0..n).map(|i| (ti(i), ScalarExpr::sin(si(i)))));
    let same = ctz.same_as(&DifferentialForm::one_form(&cchart, expect)?)?;
    rep.push(Check::symbolic("contactization-form", same).with("form", ctz.to_text(&Default::default())));
    let cvol = DifferentialForm::volume(&cchart);
    let cratio = ctz.wedge(&ctz.ext_d().power(n)?)?.top_ratio(&cvol)?;
    let reduces = (&cratio - &det.scale(&factorial(n))).is_symbolic_zero();
    let creg = interior_region(&cchart, MARGIN, grid)?;
    let cls = classify(&ctz, &creg)?;
    rep.push(
        Check::grid("contactization-contact", reduces && det_ok)
            .with("volume_is_n_factorial_det", reduces)
            .with("class", format!("{:?}", cls.class))
            .with_certificate(&cls.certificate),
    );
    if n == 1 {
        let torsion = DifferentialForm::one_form(
            &cchart,
            alloc::vec![(2, ScalarExpr::cos(0)), (1, ScalarExpr::sin(0))],
        )?;
        rep.push(Check::symbolic("pi-torsion-form", ctz.same_as(&torsion)?));
    }
    Ok(rep)
}
