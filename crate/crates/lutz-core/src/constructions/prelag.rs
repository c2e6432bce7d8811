//! Neighborhood form of a pre-Lagrangian torus and the blow-up chart.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::check_dim;
use crate::chart::{Chart, CoordKind};
use crate::error::Result;
use crate::forms::{ChartRef, DifferentialForm};
use crate::report::{Check, ConstructionReport, Params};
use crate::scalar::{qr, ScalarExpr, Value};

fn chart_of(names: Vec<(String, CoordKind)>) -> ChartRef {
    Arc::new(Chart::new(names.iter().map(|(s, k)| (s.as_str(), *k)).collect()).expect("distinct names"))
}

/// (φ, θ₁…θₙ, s₁…sₙ).
pub fn cartesian_chart(n: usize) -> ChartRef {
    let mut v = alloc::vec![(String::from("phi"), CoordKind::Angle)];
    v.extend((1..=n).map(|i| (format!("th{i}"), CoordKind::Angle)));
    v.extend((1..=n).map(|i| (format!("s{i}"), CoordKind::Linear)));
    chart_of(v)
}

/// (φ, θ₁…θₙ, ρ, ψ₁…ψₙ₋₁), primed names with `prime`.
pub fn spherical_chart(n: usize, prime: bool) -> ChartRef {
    let p = if prime { "'" } else { "" };
    let mut v = alloc::vec![(format!("phi{p}"), CoordKind::Angle)];
    v.extend((1..=n).map(|i| (format!("th{i}{p}"), CoordKind::Angle)));
    v.push((format!("rho{p}"), CoordKind::Radial));
    v.extend((1..n).map(|i| (format!("psi{i}{p}"), CoordKind::Angle)));
    chart_of(v)
}

/// (φ′, θ′…, ψ′…, ρ′): the target ordering of the blow-up map.
pub fn target_chart(n: usize) -> ChartRef {
    let mut v = alloc::vec![(String::from("phi'"), CoordKind::Angle)];
    v.extend((1..=n).map(|i| (format!("th{i}'"), CoordKind::Angle)));
    v.extend((1..n).map(|i| (format!("psi{i}'"), CoordKind::Angle)));
    v.push((String::from("rho'"), CoordKind::Radial));
    chart_of(v)
}

/// dφ + Σsᵢdθᵢ.
pub fn eta0(n: usize) -> DifferentialForm {
    let chart = cartesian_chart(n);
    let mut c = alloc::vec![(0usize, ScalarExpr::one())];
    c.extend((0..n).map(|i| (1 + i, ScalarExpr::coord(1 + n + i))));
    DifferentialForm::one_form(&chart, c).expect("cartesian chart")
}

/// sᵢ in spherical coordinates on a chart whose ρ sits at `rho` and ψⱼ at
/// `psi(j)`.
pub fn sphere_images(n: usize, rho: usize, psi: impl Fn(usize) -> usize) -> Vec<ScalarExpr> {
    (0..n)
        .map(|i| {
            let mut f: Vec<ScalarExpr> = alloc::vec![ScalarExpr::coord(rho)];
            f.extend((0..i).map(|j| ScalarExpr::sin(psi(j))));
            if i + 1 < n {
                f.push(ScalarExpr::cos(psi(i)));
            }
            ScalarExpr::product(f.iter())
        })
        .collect()
}

/// dφ + Σ ρuᵢ(ψ)dθᵢ on a spherical-type chart.
fn printed_spherical(chart: &ChartRef, n: usize, rho: usize, psi: impl Fn(usize) -> usize) -> DifferentialForm {
    let mut c = alloc::vec![(0usize, ScalarExpr::one())];
    c.extend(sphere_images(n, rho, psi).into_iter().enumerate().map(|(i, e)| (1 + i, e)));
    DifferentialForm::one_form(chart, c).expect("spherical chart")
}

pub fn verify_prelag(n: usize) -> Result<ConstructionReport> {
    check_dim(n)?;
    let mut rep = ConstructionReport::new("prelag-blowup", Params::new(n, crate::analysis::DEFAULT_POINTS));
    let sph = spherical_chart(n, false);
    let rho = 1 + n;
    let psi = |j: usize| 2 + n + j;
    let mut images: Vec<ScalarExpr> = (0..=n).map(ScalarExpr::coord).collect();
    images.extend(sphere_images(n, rho, psi));
    let pulled = eta0(n).pullback(&sph, &images)?;
    let printed = printed_spherical(&sph, n, rho, psi);
    rep.push(Check::symbolic("spherical-form", pulled.same_as(&printed)?).with("form", pulled.to_text(&Default::default())));

    let squares: Vec<ScalarExpr> = sphere_images(n, rho, psi).iter().map(|e| e.pow(2)).collect();
    let pyth = &ScalarExpr::sum(squares.iter()) - &ScalarExpr::coord(rho).pow(2);
    rep.push(Check::symbolic("sphere-radius", pyth.is_symbolic_zero()));

    // η₀′ on the target chart, pulled back along the coordinate renaming.
    let tgt = target_chart(n);
    let t_rho = 1 + n + (n - 1);
    let t_psi = |j: usize| 1 + n + j;
    let eta_prime = printed_spherical(&tgt, n, t_rho, t_psi);
    let mut rename: Vec<ScalarExpr> = (0..=n).map(ScalarExpr::coord).collect();
    rename.extend((0..n - 1).map(|j| ScalarExpr::coord(psi(j))));
    rename.push(ScalarExpr::coord(rho));
    let back = eta_prime.pullback(&sph, &rename)?;
    rep.push(Check::symbolic("blowup-contactomorphism", back.same_as(&pulled)?));

    let no_drho = pulled.component(&[rho]).is_symbolic_zero();
    let slice = pulled.restrict(&[(rho, Value::Rational(qr(1, 2)))])?;
    rep.push(Check::symbolic("rho-slice", no_drho && !slice.is_symbolic_zero()).with("slice", slice.to_text(&Default::default())));
    if n == 1 {
        rep.note("n = 1: the sphere of D^1 is two points and s1 = rho");
    }
    Ok(rep)
}
