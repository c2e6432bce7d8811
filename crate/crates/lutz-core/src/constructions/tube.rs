//! The standard tube (S¹ × D²ⁿ, ker(dφ + Σrᵢ²dθᵢ)).

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{check_dim, ri, thi, tube_chart, tube_region, Identity, NamedConstruction};
use crate::analysis::{classify, dividing_set, Class, Level, Region};
use crate::chart::{Chart, CoordKind};
use crate::error::Result;
use crate::forms::{ChartRef, DifferentialForm, VectorField};
use crate::report::{Check, ConstructionReport, Params};
use crate::scalar::{factorial, q, ScalarExpr, Value};

/// ξ₀ = dφ + Σrᵢ²dθᵢ.
pub fn xi0(chart: &ChartRef) -> DifferentialForm {
    let n = (chart.dim() - 1) / 2;
    let mut c = alloc::vec![(0usize, ScalarExpr::one())];
    for i in 0..n {
        c.push((thi(i), ScalarExpr::coord_pow(ri(i), 2)));
    }
    DifferentialForm::one_form(chart, c).expect("tube chart")
}

/// Cartesian chart (x₁, y₁, …, xₙ, yₙ).
pub fn cartesian_chart(n: usize) -> ChartRef {
    let names: Vec<(alloc::string::String, CoordKind)> = (1..=n)
        .flat_map(|i| [(alloc::format!("x{i}"), CoordKind::Linear), (alloc::format!("y{i}"), CoordKind::Linear)])
        .collect();
    Arc::new(Chart::new(names.iter().map(|(s, k)| (s.as_str(), *k)).collect()).expect("distinct names"))
}

/// Σ(xᵢdyᵢ − yᵢdxᵢ) on the Cartesian chart.
pub fn liouville_cartesian(chart: &ChartRef) -> DifferentialForm {
    let n = chart.dim() / 2;
    let mut c = Vec::new();
    for i in 0..n {
        c.push((2 * i + 1, ScalarExpr::coord(2 * i)));
        c.push((2 * i, -ScalarExpr::coord(2 * i + 1)));
    }
    DifferentialForm::one_form(chart, c).expect("cartesian chart")
}

pub fn make_standard_tube(n: usize) -> Result<NamedConstruction> {
    check_dim(n)?;
    let chart = tube_chart(n);
    let alpha = xi0(&chart);
    let mut nc = NamedConstruction::new("standard-tube", &chart);
    // α∧(dα)ⁿ = n!2ⁿ r₁⋯rₙ dφ∧dr₁∧dθ₁∧…
    let top = alpha.wedge(&alpha.ext_d().power(n)?)?;
    nc.identities.push(Identity::new(
        "volume-coefficient",
        top,
        DifferentialForm::volume(&chart).scale(&ScalarExpr::constant(factorial(n) * q(1i64 << n))),
    ));
    // {φ = 0} slice equals the polar pullback of Σ(x dy − y dx).
    let slice = alpha.restrict(&[(0, Value::int(0))])?;
    let cart = cartesian_chart(n);
    let mut images = Vec::new();
    for i in 0..n {
        // slice chart: (r₁, θ₁, …); rᵢ ↦ 2i, θᵢ ↦ 2i+1
        images.push(&ScalarExpr::coord(2 * i) * &ScalarExpr::cos(2 * i + 1));
        images.push(&ScalarExpr::coord(2 * i) * &ScalarExpr::sin(2 * i + 1));
    }
    let pulled = liouville_cartesian(&cart).pullback(slice.chart(), &images)?;
    nc.identities.push(Identity::new("slice-is-eta0", pulled, slice));
    nc.forms.push(("xi0".into(), alpha));
    nc.regions.push(("U(2)".into(), tube_region(&chart, 2.0, crate::analysis::DEFAULT_POINTS)?));
    Ok(nc)
}

pub fn verify_standard_tube(n: usize, grid: usize) -> Result<ConstructionReport> {
    let nc = make_standard_tube(n)?;
    let mut rep = ConstructionReport::new("standard-tube", Params::new(n, grid));
    for c in nc.identity_checks() {
        rep.push(c);
    }
    let chart = nc.chart.clone();
    let alpha = nc.form("xi0").expect("built").clone();
    let region = tube_region(&chart, 2.0, grid)?;
    let cls = classify(&alpha, &region)?;
    rep.push(
        Check::grid("classify-contact", cls.class == Class::Contact)
            .with("class", alloc::format!("{:?}", cls.class))
            .with_certificate(&cls.certificate),
    );
    // ξ₀-round sphere: for n = 1 the torus {r = 1} with the radial field.
    if n == 1 {
        let x = VectorField::new(&chart, alloc::vec![(ri(0), ScalarExpr::coord(ri(0)))])?;
        let level = Level::new(ri(0), Value::int(1));
        let sub = alpha.restrict(&[(ri(0), Value::int(1))])?;
        let sigma = Region::new(sub.chart()).with_seed(region.seed());
        let rep_div = dividing_set(&level, &alpha, &x, &sigma)?;
        rep.push(
            Check::symbolic("radial-field-tangent-to-xi0", rep_div.pairing.is_symbolic_zero())
                .with("zeros", rep_div.zeros.len())
                .with("samples", rep_div.certificate.samples),
        );
        rep.note(
            "the radial field is transverse to {r=1} but tangent to xi0 everywhere on it, so alpha(X) vanishes \
             identically: the torus is xi-round, not convex for X",
        );
    }
    Ok(rep)
}
