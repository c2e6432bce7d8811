//! The two sections σ₁, σ₂ of ker ω_tw used for the Euler class.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{check_dim, cos_product, omega_tw, ri, sqrt_pi, thi, tube_chart, tube_region};
use crate::analysis::{alpha_of, linalg::rank, LOCUS_TOL};
use crate::error::Result;
use crate::forms::{ChartRef, VectorField};
use crate::profile::{PiecewiseProfile, ProfileEnv};
use crate::report::{Check, ConstructionReport, Params};
use crate::scalar::{q, Arg, ScalarExpr};

/// Profile id of the bump g.
pub const BUMP: u16 = 0;
/// Plateau width of the default bump.
pub const BUMP_EPS: f64 = 0.1;

fn radial_mask(n: usize) -> u32 {
    (0..n).fold(0, |m, i| m | (1 << ri(i)))
}

/// σ₁ = g(r)Σrᵢ∂rᵢ + (1 − g(r)) r {(Σ sin rᵢ²)∂φ − (∏cos rᵢ²)Σ∂θᵢ}, with g opaque.
pub fn sigma1(chart: &ChartRef) -> VectorField {
    let n = (chart.dim() - 1) / 2;
    let mask = radial_mask(n);
    let g = ScalarExpr::profile(BUMP, 0, Arg::Norm(mask));
    let r = ScalarExpr::norm(mask);
    let w = &(&ScalarExpr::one() - &g) * &r;
    let sum_sin: Vec<ScalarExpr> = (0..n).map(|i| ScalarExpr::sin_sq(ri(i))).collect();
    let mut comps = alloc::vec![(0usize, &w * &ScalarExpr::sum(sum_sin.iter()))];
    let c = cos_product(0..n);
    for i in 0..n {
        comps.push((ri(i), &g * &ScalarExpr::coord(ri(i))));
        comps.push((thi(i), -(&w * &c)));
    }
    VectorField::new(chart, comps).expect("tube chart")
}

/// σ₂ = −Σrᵢ∂rᵢ.
pub fn sigma2(chart: &ChartRef) -> VectorField {
    let n = (chart.dim() - 1) / 2;
    VectorField::new(chart, (0..n).map(|i| (ri(i), -ScalarExpr::coord(ri(i)))).collect()).expect("tube chart")
}

pub fn default_bump() -> PiecewiseProfile {
    PiecewiseProfile::step(BUMP_EPS, sqrt_pi() - BUMP_EPS, 0.0, 1.0).expect("ordered knots")
}

/// |V|² in the cylindrical metric.
fn norm_sq(v: &[f64], p: &[f64], n: usize) -> f64 {
    let mut s = v[0] * v[0];
    for i in 0..n {
        s += v[ri(i)] * v[ri(i)] + v[thi(i)] * v[thi(i)] * p[ri(i)] * p[ri(i)];
    }
    s
}

/// Central-difference Jacobian at the core of σ₁ written in Cartesian
/// coordinates (x₁, y₁, …, φ) with g ≡ 0 near the core. `with_r` keeps the
/// r prefactor.
fn core_jacobian(n: usize, with_r: bool) -> Vec<Vec<f64>> {
    let field = |x: &[f64]| -> Vec<f64> {
        let r2: Vec<f64> = (0..n).map(|i| x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]).collect();
        let r = libm::sqrt(r2.iter().sum::<f64>());
        let pre = if with_r { r } else { 1.0 };
        let c: f64 = r2.iter().map(|s| libm::cos(*s)).product();
        let mut out = alloc::vec![0.0; 2 * n + 1];
        for i in 0..n {
            // −C ∂θᵢ = −C(−yᵢ∂xᵢ + xᵢ∂yᵢ)
            out[2 * i] = pre * c * x[2 * i + 1];
            out[2 * i + 1] = -pre * c * x[2 * i];
        }
        out[2 * n] = pre * r2.iter().map(|s| libm::sin(*s)).sum::<f64>();
        out
    };
    let h = 1e-4;
    let dim = 2 * n + 1;
    let mut jac = alloc::vec![alloc::vec![0.0; dim]; dim];
    for j in 0..2 * n {
        let mut a = alloc::vec![0.0; dim];
        let mut b = alloc::vec![0.0; dim];
        a[j] = h;
        b[j] = -h;
        let (fa, fb) = (field(&a), field(&b));
        for i in 0..dim {
            jac[i][j] = (fa[i] - fb[i]) / (2.0 * h);
        }
    }
    jac
}

pub fn verify_euler_sections(n: usize, grid: usize) -> Result<ConstructionReport> {
    check_dim(n)?;
    let chart = tube_chart(n);
    let w = omega_tw(&chart);
    let s1 = sigma1(&chart);
    let s2 = sigma2(&chart);
    let mut rep = ConstructionReport::new("euler-sections", Params::new(n, grid));
    let p1 = alpha_of(&w, &s1)?;
    rep.push(Check::symbolic("sigma1-in-kernel", p1.is_symbolic_zero()));
    for (label, v) in [("g=0", 0), ("g=1", 1)] {
        let sub = s1.map_coefficients(|c| Ok(c.substitute_profile(BUMP, &q(v))))?;
        let ok = alpha_of(&w, &sub)?.is_symbolic_zero();
        let extra = if v == 1 { sub.add(&s2)?.is_symbolic_zero() } else { true };
        rep.push(Check::symbolic(&format!("sigma1-plateau-{label}"), ok && extra));
    }
    rep.push(Check::symbolic("sigma2-in-kernel", alpha_of(&w, &s2)?.is_symbolic_zero()));

    let env = Arc::new(ProfileEnv::new().with_profile(BUMP, default_bump()));
    let region = tube_region(&chart, sqrt_pi(), grid)?.with_env(env.clone());
    let mask = radial_mask(n);
    let samples = region.samples(mask);
    let mut zeros = Vec::new();
    let mut s2_zeros = 0;
    for smp in &samples {
        let v = s1.evaluate_in(&smp.point, env.as_ref())?;
        if libm::sqrt(norm_sq(&v, &smp.point, n)) <= LOCUS_TOL {
            zeros.push(smp.index.clone());
        }
        let v2 = s2.evaluate_in(&smp.point, env.as_ref())?;
        let off_core = (0..n).any(|i| smp.index[ri(i)] != 0);
        if off_core && libm::sqrt(norm_sq(&v2, &smp.point, n)) <= LOCUS_TOL {
            s2_zeros += 1;
        }
    }
    let only_core = zeros.iter().all(|idx| (0..n).all(|i| idx[ri(i)] == 0));
    rep.push(
        Check::grid("sigma1-zero-locus-is-core", !zeros.is_empty() && only_core)
            .with("samples", samples.len())
            .with("zeros", zeros.len()),
    );
    rep.push(Check::grid("sigma2-nonzero-off-core", s2_zeros == 0).with("samples", samples.len()));

    let jac = core_jacobian(n, true);
    let max_entry = jac.iter().flatten().fold(0.0f64, |m, v| m.max(libm::fabs(*v)));
    let bare = rank(&core_jacobian(n, false), 2 * n + 1, 1e-6);
    rep.push(
        Check::grid("sigma1-core-jacobian", bare == 2 * n)
            .with("max_entry_with_r_prefactor", max_entry)
            .with("rank_without_r_prefactor", bare),
    );
    rep.note(format!(
        "with the r prefactor the Cartesian Jacobian of sigma1 at the core vanishes (max entry {max_entry:.1e}); \
         without it the rank is {bare} = 2n"
    ));
    Ok(rep)
}
