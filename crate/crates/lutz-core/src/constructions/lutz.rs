//! The generalized Lutz confoliation ω_tw on U(√π) and its line version.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{
    check_dim, cos_product, volume_bracket, line_chart, locus_strata, omega_tw, ri, sqrt_pi, thi,
    tube_chart, tube_region, NamedConstruction,
};
use crate::analysis::{
    classify, conductivity_check, contact_ratio, non_contact_locus, tau, Class, MAX_STEPS, PAIRING_TOL,
};
use crate::error::Result;
use crate::forms::{ChartRef, DiagonalMetric, DifferentialForm, VectorField};
use crate::report::{Check, ConstructionReport, Params};
use crate::scalar::{factorial, q, ScalarExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Core {
    Circle,
    Line,
}

pub fn make_lutz_confoliation(n: usize, core: Core, grid: usize) -> Result<NamedConstruction> {
    check_dim(n)?;
    let chart = match core {
        Core::Circle => tube_chart(n),
        Core::Line => line_chart(n),
    };
    let name = match core {
        Core::Circle => "lutz-confoliation",
        Core::Line => "lutz-confoliation-line",
    };
    let mut nc = NamedConstruction::new(name, &chart);
    nc.forms.push(("omega_tw".into(), omega_tw(&chart)));
    nc.regions.push(("U(sqrt(pi))".into(), tube_region(&chart, sqrt_pi(), grid)?));
    nc.fields.push(("radial".into(), radial_field(&chart)));
    Ok(nc)
}

/// X = Σrᵢ∂rᵢ.
pub fn radial_field(chart: &ChartRef) -> VectorField {
    let n = (chart.dim() - 1) / 2;
    VectorField::new(chart, (0..n).map(|i| (ri(i), ScalarExpr::coord(ri(i)))).collect()).expect("tube chart")
}

/// The grouped closed form of τ(ω_tw) as printed:
/// 2ⁿ⁻¹(n−1)! Σ_{i≠j} ∏_{k≠i,j}cos rₖ² [∏_{k≠i}cos rₖ²(sin rᵢ² sin rⱼ² dθᵢ − dθⱼ) + cos rᵢ² sin rⱼ² dφ] ∧ rⱼdrⱼ.
pub fn printed_tau(chart: &ChartRef) -> Result<DifferentialForm> {
    let n = (chart.dim() - 1) / 2;
    let mut out = DifferentialForm::zero(chart, 2);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let outer = cos_product((0..n).filter(|&k| k != i && k != j));
            let inner = cos_product((0..n).filter(|&k| k != i));
            let si_sj = &ScalarExpr::sin_sq(ri(i)) * &ScalarExpr::sin_sq(ri(j));
            let bracket = DifferentialForm::one_form(
                chart,
                alloc::vec![
                    (thi(i), &inner * &si_sj),
                    (thi(j), -inner.clone()),
                    (0, &ScalarExpr::cos_sq(ri(i)) * &ScalarExpr::sin_sq(ri(j))),
                ],
            )?;
            let rdr = DifferentialForm::one_form(chart, alloc::vec![(ri(j), ScalarExpr::coord(ri(j)))])?;
            out = out.add(&bracket.wedge(&rdr)?.scale(&outer))?;
        }
    }
    let c = factorial(n.saturating_sub(1)) * q(1i64 << (n - 1));
    Ok(out.scale(&ScalarExpr::constant(c)))
}

fn bracket_check(nc: &NamedConstruction) -> Result<Check> {
    let alpha = nc.form("omega_tw").expect("built");
    let region = nc.region("U(sqrt(pi))").expect("built");
    let ratio = contact_ratio(alpha, region)?;
    let n = (nc.chart.dim() - 1) / 2;
    let ok = (&ratio - &volume_bracket(n)).is_symbolic_zero();
    Ok(Check::symbolic("volume-bracket", ok).with("terms", ratio.num_terms()))
}

pub fn verify_lutz(n: usize, core: Core, grid: usize) -> Result<ConstructionReport> {
    let nc = make_lutz_confoliation(n, core, grid)?;
    let mut rep = ConstructionReport::new(&nc.name, Params::new(n, grid));
    rep.push(bracket_check(&nc)?);
    let alpha = nc.form("omega_tw").expect("built");
    let region = nc.region("U(sqrt(pi))").expect("built");
    let cls = classify(alpha, region)?;
    let expected = if n == 1 { Class::Contact } else { Class::Confoliation };
    rep.push(
        Check::grid("classify", cls.class == expected)
            .with("class", format!("{:?}", cls.class))
            .with("expected", format!("{expected:?}"))
            .with_certificate(&cls.certificate),
    );
    let strata = locus_strata(n, sqrt_pi());
    let locus = non_contact_locus(alpha, region, &strata)?;
    let ok = if n == 1 { locus.zeros.is_empty() } else { locus.matches() };
    let names: Vec<String> = locus.strata.iter().map(|s| format!("{}:{}/{}", s.name, s.covered, s.shadow_nodes)).collect();
    rep.push(
        Check::grid("non-contact-locus", ok)
            .with("strata", names)
            .with("unmatched_zeros", locus.unmatched_zeros)
            .with_certificate(&locus.certificate),
    );
    if core == Core::Circle && n >= 2 {
        let g = DiagonalMetric::polar_area(&nc.chart)?;
        let t = tau(alpha, &g)?;
        let printed = printed_tau(&nc.chart)?;
        let same = t.same_as(&printed)?;
        if n == 2 {
            rep.push(Check::symbolic("tau-printed-form", same).with("metric", "polar-area"));
        } else {
            rep.push(Check::new("tau-printed-form-comparison", crate::report::Status::SymbolicPass).with("equal", same));
            if !same {
                rep.note(format!(
                    "for n = {n} the printed grouped expansion of tau differs from the computed tau; \
                     reported, not asserted"
                ));
            }
        }
        let cyl = DiagonalMetric::cylindrical(&nc.chart)?;
        rep.note(format!(
            "tau compared in the metric dphi^2 + sum(r^2 dr^2 + dtheta^2); the cylindrical metric gives the printed form: {}",
            tau(alpha, &cyl)?.same_as(&printed)?
        ));
        let x = nc.fields[0].1.clone();
        let cert = conductivity_check(alpha, region, &x, &g)?;
        let worst_steps = cert.paths.iter().map(|p| p.steps).max().unwrap_or(0);
        let worst_pair = cert.paths.iter().map(|p| p.max_pairing).fold(0.0, f64::max);
        let backward = cert.paths.iter().filter(|p| p.direction < 0).count();
        let ok = cert.paths.len() == locus.zeros.len() && worst_steps <= MAX_STEPS;
        rep.push(
            Check::grid("conductivity-paths", ok)
                .with("paths", cert.paths.len())
                .with("max_steps", worst_steps)
                .with("backward_paths", backward)
                .with("max_null_pairing", worst_pair)
                .with("min_arrival_value", cert.min),
        );
        rep.push(Check::grid("conductivity-null-pairing", worst_pair <= PAIRING_TOL).with("max", worst_pair));
    }
    Ok(rep)
}
