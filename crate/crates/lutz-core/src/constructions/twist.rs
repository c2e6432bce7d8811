//! The homotopy ω_t from the standard tube to the 2π-Lutz tube and its
//! almost-contact 2-forms γ_t.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{check_dim, omega_tw, ri, sqrt_pi, thi, tube_chart, tube_region};
use super::tube::xi0;
use crate::analysis::{blend, scan, Class, Region, Spacing, POSITIVITY_TOL};
use crate::error::{Error, Result};
use crate::forms::{ChartRef, DifferentialForm};
use crate::report::{Check, ConstructionReport, Params, Status};
use crate::scalar::{factorial, q, Arg, Env, ScalarExpr};

/// Parameter id of t.
pub const T: u16 = 0;

/// Parameter id of Aᵢ (0-based i).
pub fn a_id(i: usize) -> u16 {
    1 + i as u16
}

/// Profile id of fᵢ.
pub fn f_id(i: usize) -> u16 {
    2 * i as u16
}

/// Profile id of gᵢ.
pub fn g_id(i: usize) -> u16 {
    2 * i as u16 + 1
}

fn f(i: usize, order: u8) -> ScalarExpr {
    ScalarExpr::profile(f_id(i), order, Arg::Coord(ri(i) as u16))
}

fn g(i: usize, order: u8) -> ScalarExpr {
    ScalarExpr::profile(g_id(i), order, Arg::Coord(ri(i) as u16))
}

fn prod(items: Vec<ScalarExpr>) -> ScalarExpr {
    ScalarExpr::product(items.iter())
}

/// hat-ω_t = ∏fᵢ dφ + Σgᵢdθᵢ with opaque fᵢ, gᵢ.
pub fn omega_hat(chart: &ChartRef) -> DifferentialForm {
    let n = (chart.dim() - 1) / 2;
    let mut c = alloc::vec![(0usize, prod((0..n).map(|i| f(i, 0)).collect()))];
    for i in 0..n {
        c.push((thi(i), g(i, 0)));
    }
    DifferentialForm::one_form(chart, c).expect("tube chart")
}

/// ω_t = hat-ω_t + t(1−t)Σrᵢ(1−rᵢ)drᵢ.
pub fn omega_t(chart: &ChartRef) -> DifferentialForm {
    let n = (chart.dim() - 1) / 2;
    let t = ScalarExpr::param(T);
    let tt = &t * &(&ScalarExpr::one() - &t);
    let extra: Vec<(usize, ScalarExpr)> = (0..n)
        .map(|i| {
            let r = ScalarExpr::coord(ri(i));
            (ri(i), &tt * &(&r * &(&ScalarExpr::one() - &r)))
        })
        .collect();
    omega_hat(chart).add(&DifferentialForm::one_form(chart, extra).expect("tube chart")).expect("same chart")
}

/// γ_t = d hat-ω_t + Σᵢ(∏ⱼ≠ᵢ gⱼ')Aᵢ dθᵢ∧dφ.
pub fn gamma_t(chart: &ChartRef) -> Result<DifferentialForm> {
    let n = (chart.dim() - 1) / 2;
    let mut terms = Vec::new();
    for i in 0..n {
        let c = &prod((0..n).filter(|&j| j != i).map(|j| g(j, 1)).collect()) * &ScalarExpr::param(a_id(i));
        terms.push((alloc::vec![thi(i), 0], c));
    }
    omega_hat(chart).ext_d().add(&DifferentialForm::from_terms(chart, 2, terms)?)
}

/// The printed brace:
/// ∏fᵢgᵢ' − Σᵢ(∏ⱼ≠ᵢfⱼ)fᵢ'(∏ⱼ≠ᵢgⱼ')gᵢ + t(1−t)ΣᵢAᵢ(∏ⱼ≠ᵢgⱼ')²rᵢ(1−rᵢ).
pub fn printed_brace(n: usize) -> (ScalarExpr, ScalarExpr) {
    let mut hat = prod((0..n).map(|i| &f(i, 0) * &g(i, 1)).collect());
    for i in 0..n {
        let others_f = prod((0..n).filter(|&j| j != i).map(|j| f(j, 0)).collect());
        let others_g = prod((0..n).filter(|&j| j != i).map(|j| g(j, 1)).collect());
        hat = &hat - &prod(alloc::vec![others_f, f(i, 1), others_g, g(i, 0)]);
    }
    let t = ScalarExpr::param(T);
    let tt = &t * &(&ScalarExpr::one() - &t);
    let mut a_term = ScalarExpr::zero();
    for i in 0..n {
        let others_g = prod((0..n).filter(|&j| j != i).map(|j| g(j, 1)).collect());
        let r = ScalarExpr::coord(ri(i));
        a_term = &a_term
            + &prod(alloc::vec![ScalarExpr::param(a_id(i)), others_g.pow(2), r.clone(), &ScalarExpr::one() - &r]);
    }
    (hat, &tt * &a_term)
}

/// dφ∧dr₁∧dθ₁∧…∧drₙ∧dθₙ with unit density.
pub fn bare_volume(chart: &ChartRef) -> DifferentialForm {
    DifferentialForm::from_terms(chart, chart.dim(), alloc::vec![((0..chart.dim()).collect(), ScalarExpr::one())])
        .expect("top degree")
}

/// Coefficient of ω_t∧γ_tⁿ against the bare volume.
pub fn twist_coefficient(chart: &ChartRef) -> Result<ScalarExpr> {
    let n = (chart.dim() - 1) / 2;
    omega_t(chart).wedge(&gamma_t(chart)?.power(n)?)?.top_ratio(&bare_volume(chart))
}

/// Curves linearly interpolated in angle: fᵢ = cos(c_t r²), gᵢ = sin(c_t r²)
/// with c_t = π/2 + tπ, and Aᵢ = A.
#[derive(Clone, Debug)]
pub struct AngleCurves {
    pub t: f64,
    pub a: f64,
}

impl AngleCurves {
    pub fn speed(&self) -> f64 {
        PI / 2.0 + self.t * PI
    }
}

impl Env for AngleCurves {
    fn param(&self, id: u16) -> Option<f64> {
        Some(if id == T { self.t } else { self.a })
    }

    fn profile(&self, id: u16, order: u8, x: f64) -> Option<f64> {
        let c = self.speed();
        let u = c * x * x;
        let (s, co) = (libm::sin(u), libm::cos(u));
        // d/dx cos(cx²) = −2cx sin, d/dx sin(cx²) = 2cx cos
        let v = match (id % 2 == 0, order) {
            (true, 0) => co,
            (false, 0) => s,
            (true, 1) => -2.0 * c * x * s,
            (false, 1) => 2.0 * c * x * co,
            (true, 2) => -2.0 * c * s - 4.0 * c * c * x * x * co,
            (false, 2) => 2.0 * c * co - 4.0 * c * c * x * x * s,
            _ => return None,
        };
        Some(v)
    }
}

/// Outcome of the A-search.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub found: Option<f64>,
    pub tried: Vec<f64>,
    /// For the largest A tried: (t, min coefficient, argmin).
    pub per_t: Vec<(f64, f64, Vec<f64>)>,
}

fn t_grid(points: usize) -> Vec<f64> {
    (0..points).map(|k| k as f64 / (points - 1) as f64).collect()
}

fn twist_region(chart: &ChartRef, grid: usize) -> Result<Region> {
    let n = (chart.dim() - 1) / 2;
    let mut reg = Region::new(chart);
    for i in 0..n {
        reg = reg.with_bounds(ri(i), 1e-4, 1.0)?.with_points(ri(i), grid).with_spacing(ri(i), Spacing::SquareUniform);
    }
    Ok(reg)
}

/// Double A from 1 to 2²⁰ until the coefficient is grid-positive at every t.
pub fn search_a(chart: &ChartRef, coeff: &ScalarExpr, grid: usize, t_points: usize) -> Result<SearchOutcome> {
    let region = twist_region(chart, grid)?;
    let samples = region.samples(coeff.dependencies());
    let ts = t_grid(t_points);
    for &t in &ts {
        for s in &samples {
            let env = AngleCurves { t, a: 1.0 };
            for i in 0..(chart.dim() - 1) / 2 {
                let x = s.point[ri(i)];
                let (fv, gv) = (env.profile(f_id(i), 0, x).unwrap(), env.profile(g_id(i), 0, x).unwrap());
                if fv * fv + gv * gv <= 1e-6 {
                    return Err(Error::CurveThroughOrigin(format!("t = {t}, r = {x}")));
                }
            }
        }
    }
    let mut tried = Vec::new();
    let mut per_t = Vec::new();
    for k in 0..=20 {
        let a = (1u64 << k) as f64;
        tried.push(a);
        per_t.clear();
        let mut ok = true;
        for &t in &ts {
            let env = AngleCurves { t, a };
            let sc = scan(&samples, POSITIVITY_TOL, |p| coeff.evaluate_in(p, &env))?;
            per_t.push((t, sc.min, sc.argmin.unwrap_or_default()));
            if sc.min <= POSITIVITY_TOL {
                ok = false;
            }
        }
        if ok {
            return Ok(SearchOutcome { found: Some(a), tried, per_t });
        }
    }
    Ok(SearchOutcome { found: None, tried, per_t })
}

pub fn verify_full_twist(n: usize, grid: usize) -> Result<ConstructionReport> {
    check_dim(n)?;
    let chart = tube_chart(n);
    let mut rep = ConstructionReport::new("full-twist", Params::new(n, grid));
    let computed = twist_coefficient(&chart)?;
    let (hat, a_term) = printed_brace(n);
    let printed = &hat + &a_term;
    let nf = ScalarExpr::constant(factorial(n));
    let scaled = (&computed - &(&nf * &printed)).is_symbolic_zero();
    let literal = (&computed - &printed).is_symbolic_zero();
    rep.push(
        Check::symbolic("coefficient-identity", scaled)
            .with("factor", format!("{}", factorial(n)))
            .with("literal_match", literal),
    );
    if !literal {
        rep.note(format!("the computed coefficient of omega_t ^ gamma_t^n is n! = {} times the printed brace", factorial(n)));
    }
    let hat_top = omega_hat(&chart).wedge(&omega_hat(&chart).ext_d().power(n)?)?.top_ratio(&bare_volume(&chart))?;
    rep.push(Check::symbolic("hat-term", (&hat_top - &(&nf * &hat)).is_symbolic_zero()));
    for (label, tv) in [("t=0", 0), ("t=1", 1)] {
        let w = omega_t(&chart).map_coefficients(|c| Ok(c.substitute_param(T, &q(tv))))?;
        let h = omega_hat(&chart);
        let c = computed.substitute_param(T, &q(tv));
        let ok = w.same_as(&h)? && (&c - &hat_top).is_symbolic_zero();
        rep.push(Check::symbolic(&format!("endpoint-{label}"), ok));
    }

    // f ≡ 0 / f ≡ 1 blends between ξ₀ and ω_tw.
    let region = tube_region(&chart, sqrt_pi(), grid)?;
    let (alpha, omega) = (xi0(&chart), omega_tw(&chart));
    let (b0, c0) = blend(&alpha, &omega, &ScalarExpr::zero(), &region)?;
    let (b1, c1) = blend(&alpha, &omega, &ScalarExpr::one(), &region)?;
    let expected1 = if n == 1 { Class::Contact } else { Class::Confoliation };
    rep.push(
        Check::symbolic("blend-degenerations", b0.same_as(&alpha)? && b1.same_as(&omega)?)
            .with("class_f0", format!("{:?}", c0.class))
            .with("class_f1", format!("{:?}", c1.class)),
    );
    rep.push(Check::grid("blend-classes", c0.class == Class::Contact && c1.class == expected1));

    if n == 2 {
        let out = search_a(&chart, &computed, grid, 21)?;
        let mins: Vec<f64> = out.per_t.iter().map(|x| x.1).collect();
        let failing: Vec<f64> = out.per_t.iter().filter(|x| x.1 <= POSITIVITY_TOL).map(|x| x.0).collect();
        let witnesses: Vec<Vec<f64>> = out.per_t.iter().filter(|x| x.1 <= POSITIVITY_TOL).map(|x| x.2.clone()).collect();
        let status = if out.found.is_some() { Status::GridPass } else { Status::Fail };
        let mut c = Check::new("a-search-positivity", status)
            .with("A_max", *out.tried.last().unwrap_or(&0.0))
            .with("t_points", 21usize)
            .with("min_per_t", mins)
            .with("failing_t", failing)
            .with("witnesses", witnesses);
        if let Some(a) = out.found {
            c = c.with("A_found", a);
        }
        rep.push(c);
        // Exact zero at t = 1 on r₁ = r₂ = 1/√3, independent of A.
        let r = 1.0 / libm::sqrt(3.0);
        let mut p = alloc::vec![0.0; chart.dim()];
        p[ri(0)] = r;
        p[ri(1)] = r;
        let at_one = computed.evaluate_in(&p, &AngleCurves { t: 1.0, a: (1u64 << 20) as f64 })?;
        rep.push(Check::new("t1-analytic-zero", Status::GridPass).with("value", at_one).with("point", alloc::vec![r, r]));
        if out.found.is_none() {
            rep.note(String::from(
                "no A up to 2^20 gives grid positivity: at t = 0 and t = 1 the A-term carries t(1-t) = 0, and for \
                 identical curves the hat term vanishes where f_i = g_i' = 0 for all i (r^2 = 1/(1+2t)), e.g. \
                 r1 = r2 = 1/sqrt(3) at t = 1",
            ));
        }
    }
    Ok(rep)
}

/// Convenience wrapper for callers that hold an `Arc` chart.
pub fn chart(n: usize) -> ChartRef {
    Arc::new(crate::chart::Chart::cylindrical(n))
}
