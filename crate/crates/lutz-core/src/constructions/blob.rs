//! The bordered Legendrian open book P = {r₁ ≤ √π, r₂ = … = rₙ = √π} in
//! the Lutz tube.

use alloc::vec::Vec;

use super::{check_dim, locus_strata, omega_tw, ri, sqrt_pi, thi, tube_chart, tube_region};
use crate::analysis::{contact_ratio, linalg::rank};
use crate::error::Result;
use crate::forms::DifferentialForm;
use crate::report::{Check, ConstructionReport, Params};
use crate::scalar::{qr, ScalarExpr, Value};

/// Which level the outer radii sit at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// rⱼ = √π for j ≥ 2.
    Standard,
    /// r₂ = √(π/2): moves P onto the locus.
    Sabotaged,
}

fn outer_value(v: Variant, j: usize) -> Value {
    match (v, j) {
        (Variant::Sabotaged, 1) => Value::SqrtPiMultiple(qr(1, 2)),
        _ => Value::SqrtPiMultiple(qr(1, 1)),
    }
}

pub fn verify_blob(n: usize, variant: Variant) -> Result<ConstructionReport> {
    check_dim(n)?;
    let chart = tube_chart(n);
    let w = omega_tw(&chart);
    let mut rep = ConstructionReport::new("blob", Params::new(n, crate::analysis::DEFAULT_POINTS));
    if variant == Variant::Sabotaged {
        rep.note("sabotaged variant: r2 = sqrt(pi/2)");
    }
    let phi0 = Value::int(0);
    let theta_bar = Value::Rational(qr(1, 3));
    if n == 1 {
        // The disc {φ = φ₀, r ≤ √π}: Legendrian boundary.
        let edge = w.restrict(&[(0, phi0), (ri(0), Value::SqrtPiMultiple(qr(1, 1)))])?;
        rep.push(Check::symbolic("overtwisted-disk-boundary", edge.is_symbolic_zero()));
        rep.note("n = 1: P degenerates to the overtwisted disk case");
        return Ok(rep);
    }
    let outer: Vec<(usize, Value)> = (1..n).map(|j| (ri(j), outer_value(variant, j))).collect();

    // (i) P ∩ Σ = ∅
    let region = tube_region(&chart, sqrt_pi(), crate::analysis::DEFAULT_POINTS)?;
    let mut ratio = contact_ratio(&w, &region)?;
    for (i, v) in &outer {
        ratio = ratio.substitute(*i, v)?;
    }
    let positive_constant = ratio.as_constant().map_or(false, |c| crate::scalar::q_sign(&c) > 0);
    let strata = locus_strata(n, sqrt_pi());
    let mut hit = Vec::new();
    for s in &strata {
        let excluded = s.fixed.iter().any(|(i, _)| {
            outer.iter().any(|(j, v)| {
                j == i
                    && ScalarExpr::cos_sq(*i)
                        .substitute(*i, v)
                        .ok()
                        .and_then(|e| e.as_constant())
                        .map_or(false, |c| crate::scalar::q_sign(&c) != 0)
            })
        });
        if !excluded {
            hit.push(s.name.clone());
        }
    }
    let text = ratio.to_text(Some(&chart), &Default::default());
    rep.push(
        Check::symbolic("P-avoids-locus", positive_constant && hit.is_empty())
            .with("ratio_on_P", text)
            .with("strata_met", hit),
    );

    // (ii) pages {φ = φ₀, θ₁ = θ̄} are Legendrian
    let mut fiber = alloc::vec![(0usize, phi0.clone()), (thi(0), theta_bar)];
    fiber.extend(outer.iter().cloned());
    let page = w.restrict(&fiber)?;
    rep.push(Check::symbolic("page-legendrian", page.is_symbolic_zero()).with("page_form", page.to_text(&Default::default())));

    // (iii) ∂N = {all rᵢ = √π, φ = φ₀}
    let mut bdry = alloc::vec![(0usize, phi0.clone()), (ri(0), Value::SqrtPiMultiple(qr(1, 1)))];
    bdry.extend(outer.iter().cloned());
    let edge = w.restrict(&bdry)?;
    rep.push(Check::symbolic("boundary-legendrian", edge.is_symbolic_zero()));

    // (iv) binding {r₁ = 0} isotropic, pages transverse to ∂P
    let mut bind = alloc::vec![(0usize, phi0), (ri(0), Value::int(0))];
    bind.extend(outer.iter().cloned());
    let binding = w.restrict(&bind)?;
    let dim = chart.dim();
    let unit = |i: usize| -> Vec<f64> { (0..dim).map(|k| if k == i { 1.0 } else { 0.0 }).collect() };
    let page_dirs: Vec<Vec<f64>> = core::iter::once(ri(0)).chain((1..n).map(thi)).map(unit).collect();
    let edge_dirs: Vec<Vec<f64>> = (0..n).map(thi).map(unit).collect();
    let mut both = page_dirs.clone();
    both.extend(edge_dirs.iter().cloned());
    let span = rank(&both, dim, 1e-12);
    rep.push(
        Check::symbolic("fibration-data", binding.is_symbolic_zero() && span == n + 1)
            .with("span_dim", span)
            .with("dim_P", n + 1),
    );
    Ok(rep)
}

/// Convenience for callers that only need the restricted page form.
pub fn page_form(n: usize) -> Result<DifferentialForm> {
    let chart = tube_chart(n);
    let mut a = alloc::vec![(0usize, Value::int(0)), (thi(0), Value::int(0))];
    a.extend((1..n).map(|j| (ri(j), Value::SqrtPiMultiple(qr(1, 1)))));
    omega_tw(&chart).restrict(&a)
}
