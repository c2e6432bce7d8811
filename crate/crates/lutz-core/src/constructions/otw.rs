//! The overtwisted disc model: Δ_cyl, K_ε, B = {r² ≤ K_ε + C}, α_ρ, and the
//! three-piece disc D_ot inside the line-core Lutz tube.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{check_dim, volume_bracket, NamedConstruction};
use crate::analysis::POSITIVITY_TOL;
use crate::chart::{Chart, CoordKind};
use crate::error::{Error, Result};
use crate::forms::{ChartRef, DifferentialForm};
use crate::profile::{HermitePiece, PiecewiseProfile};
use crate::report::{Check, ConstructionReport, Params};
use crate::scalar::{factorial, q, Arg, Env, NoEnv, ScalarExpr};

pub const RHO: u16 = 0;
pub const DEFAULT_EPSILON: f64 = 0.1;
pub const DEFAULT_C: f64 = 2.0;
pub const COLLAR: f64 = 0.05;

// Shape of ρ_s: slope 1 on [0, S0] and [L − S1, L], τ on the last W before
// L − S1, ramps of width ETA, μ in the middle.
const S0: f64 = 0.004;
const S1: f64 = 0.004;
const ETA: f64 = 0.004;
const W: f64 = 0.06;
const TAU: f64 = 0.1;

/// (z, r₁, φ₁, …, rₙ₋₁, φₙ₋₁, r, φ).
pub fn otw_chart(n: usize) -> ChartRef {
    let mut names: Vec<(String, CoordKind)> = alloc::vec![(String::from("z"), CoordKind::Linear)];
    for i in 1..n {
        names.push((format!("r{i}"), CoordKind::Radial));
        names.push((format!("phi{i}"), CoordKind::Angle));
    }
    names.push((String::from("r"), CoordKind::Radial));
    names.push((String::from("phi"), CoordKind::Angle));
    let weights: Vec<usize> = (0..n).map(|i| 1 + 2 * i).collect();
    Arc::new(Chart::new(names.iter().map(|(s, k)| (s.as_str(), *k)).collect()).expect("distinct names").with_weights(weights))
}

fn r_idx(n: usize) -> usize {
    2 * n - 1
}

fn standard_part(chart: &ChartRef) -> Vec<(usize, ScalarExpr)> {
    let n = (chart.dim() - 1) / 2;
    let mut c = alloc::vec![(0usize, ScalarExpr::one())];
    c.extend((0..n - 1).map(|i| (2 + 2 * i, ScalarExpr::coord(1 + 2 * i).pow(2))));
    c
}

/// α_ρ = dz + Σrᵢ²dφᵢ + ρ(r²)dφ with ρ opaque.
pub fn alpha_rho(chart: &ChartRef) -> DifferentialForm {
    let n = (chart.dim() - 1) / 2;
    let mut c = standard_part(chart);
    c.push((2 * n, ScalarExpr::profile(RHO, 0, Arg::CoordSquared(r_idx(n) as u16))));
    DifferentialForm::one_form(chart, c).expect("otw chart")
}

/// dz + Σrᵢ²dφᵢ + (r² + shift)dφ.
pub fn standard_alpha(chart: &ChartRef, shift: i64) -> DifferentialForm {
    let n = (chart.dim() - 1) / 2;
    let mut c = standard_part(chart);
    c.push((2 * n, &ScalarExpr::coord(r_idx(n)).pow(2) + &ScalarExpr::int(shift)));
    DifferentialForm::one_form(chart, c).expect("otw chart")
}

pub fn k_eps(eps: f64, s: f64) -> f64 {
    (s - (1.0 - eps)).max(0.0)
}

fn bump(eps: f64, t: f64) -> f64 {
    if t < 1.0 - eps {
        let u = (1.0 - eps - t) / (1.0 - eps);
        u * u
    } else {
        0.0
    }
}

/// K_ε as a function of |z| and Σrᵢ²: k_ε(Σ) + k_ε(|z|) − b(|z|)b(Σ), negative
/// on int Δ_ε with minimum −1 at the origin.
pub fn big_k(eps: f64, z: f64, sum: f64) -> f64 {
    let z = libm::fabs(z);
    k_eps(eps, sum) + k_eps(eps, z) - bump(eps, z) * bump(eps, sum)
}

/// ρ_(z,rᵢ) for L = K + C.
pub fn rho_profile(k: f64, c: f64) -> Result<PiecewiseProfile> {
    let l = k + c;
    if l < S0 + 2.0 * ETA + W + S1 + ETA {
        return Err(Error::ProfileViolation(format!("K + C = {l} leaves no room for the plateaus")));
    }
    // ρ_s knots; integral = a + μ·b solves μ.
    let xs = [0.0, S0, S0 + ETA, l - W - ETA, l - W, l - S1 - ETA, l - S1, l];
    let slope = |mu: f64| [1.0, 1.0, mu, mu, TAU, TAU, 1.0, 1.0];
    let integral = |mu: f64| -> f64 {
        let d = slope(mu);
        (0..7).map(|j| 0.5 * (d[j] + d[j + 1]) * (xs[j + 1] - xs[j])).sum()
    };
    let a = integral(0.0);
    let b = integral(1.0) - a;
    let mu = (k - a) / b;
    let d = slope(mu);
    let mut pieces = Vec::new();
    let mut y = 0.0;
    for j in 0..7 {
        let h = xs[j + 1] - xs[j];
        let y1 = y + 0.5 * (d[j] + d[j + 1]) * h;
        pieces.push(HermitePiece { x0: xs[j], x1: xs[j + 1], y0: y, y1, m0: d[j], m1: d[j + 1] });
        y = y1;
    }
    PiecewiseProfile::new(pieces)
}

/// ρ frozen at one parameter point.
struct Frozen<'a>(&'a PiecewiseProfile);

impl Env for Frozen<'_> {
    fn param(&self, _: u16) -> Option<f64> {
        None
    }

    fn profile(&self, id: u16, order: u8, x: f64) -> Option<f64> {
        (id == RHO).then(|| self.0.eval(order, x))
    }
}

/// Boundary profile of the disc: rises from g(−1) = 1 to √π on [−1, −1+ε],
/// constant √π up to 1 − ε.
pub fn default_g(eps: f64) -> Result<PiecewiseProfile> {
    let sp = libm::sqrt(PI);
    PiecewiseProfile::hermite(&[(-1.0, 1.0, 0.0), (-1.0 + eps, sp, 0.0), (1.0 - eps, sp, 0.0)])
}

fn check_g(g: &PiecewiseProfile, eps: f64) -> Result<()> {
    let sp = libm::sqrt(PI);
    for x in [-1.0 + eps, 1.0 - eps] {
        if libm::fabs(g.value(x) - sp) > 1e-12 {
            return Err(Error::ProfileViolation(format!("g({x}) = {} is not sqrt(pi)", g.value(x))));
        }
    }
    if g.value(-1.0) >= libm::sqrt(PI / 2.0) {
        return Err(Error::ProfileViolation(format!("g(-1) = {} is not below sqrt(pi/2)", g.value(-1.0))));
    }
    Ok(())
}

fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points).map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64).collect()
}

/// Parameter samples (z, Σrᵢ²) of Δ_cyl. K_ε only sees |z| and Σrᵢ².
fn parameter_samples(n: usize, points: usize) -> Vec<(f64, f64)> {
    let sums = if n == 1 { alloc::vec![0.0] } else { grid(0.0, 1.0, points) };
    let mut out = Vec::new();
    for z in grid(-1.0, 1.0, points) {
        for &s in &sums {
            out.push((z, s));
        }
    }
    out
}

fn near_boundary(n: usize, z: f64, sum: f64) -> bool {
    libm::fabs(z) >= 1.0 - COLLAR || (n > 1 && sum >= 1.0 - COLLAR)
}

/// The three printed conditions on ρ at one parameter point.
fn check_rho(rho: &PiecewiseProfile, n: usize, z: f64, sum: f64, k: f64, c: f64) -> Result<()> {
    let l = k + c;
    for s in grid(0.0, S0, 5) {
        if libm::fabs(rho.value(s) - s) > 1e-12 {
            return Err(Error::ProfileViolation(format!("rho(s) != s at s = {s}, z = {z}")));
        }
    }
    for s in grid(l, l + 1.0, 5) {
        if libm::fabs(rho.value(s) - (s - c)) > 1e-9 {
            return Err(Error::ProfileViolation(format!("rho(s) != s - C at s = {s}, z = {z}")));
        }
    }
    if near_boundary(n, z, sum) && !rho.is_non_decreasing(0.0, l + 1.0, 200) {
        return Err(Error::ProfileViolation(format!("rho not increasing near the boundary at z = {z}, sum = {sum}")));
    }
    if near_boundary(n, z, sum) {
        let min_slope = rho.breakpoints().iter().map(|&x| rho.eval(1, x)).fold(f64::INFINITY, f64::min);
        if min_slope <= 0.0 {
            return Err(Error::ProfileViolation(format!("rho_s = {min_slope} near the boundary")));
        }
    }
    Ok(())
}

pub fn make_otw_disc(n: usize) -> Result<NamedConstruction> {
    check_dim(n)?;
    let chart = otw_chart(n);
    let mut nc = NamedConstruction::new("otw-disc", &chart);
    nc.forms.push(("alpha_rho".into(), alpha_rho(&chart)));
    Ok(nc)
}

pub fn verify_otw(n: usize, eps: f64, c: f64, points: usize) -> Result<ConstructionReport> {
    let nc = make_otw_disc(n)?;
    let chart = nc.chart.clone();
    let mut params = Params::new(n, points);
    params.epsilon = Some(eps);
    params.big_c = Some(c);
    let mut rep = ConstructionReport::new("otw-disc", params);
    let alpha = nc.form("alpha_rho").expect("built");
    let r = r_idx(n);
    let r2 = ScalarExpr::coord(r).pow(2);

    let plateau = alpha.map_coefficients(|e| e.replace_profile(RHO, &[r2.clone(), ScalarExpr::one(), ScalarExpr::zero()]))?;
    rep.push(Check::symbolic("plateau-standard-form", plateau.same_as(&standard_alpha(&chart, 0))?));
    let shifted = alpha.map_coefficients(|e| {
        e.replace_profile(RHO, &[&r2 - &ScalarExpr::constant(q(2)), ScalarExpr::one(), ScalarExpr::zero()])
    })?;
    rep.push(Check::symbolic(
        "shifted-plateau-d-alpha",
        shifted.ext_d().same_as(&standard_alpha(&chart, 0).ext_d())? && shifted.same_as(&standard_alpha(&chart, -2))?,
    ));

    // α∧(dα)ⁿ against the weighted volume: only ∂ρ/∂s enters.
    let vol = DifferentialForm::volume(&chart);
    let ratio = alpha.wedge(&alpha.ext_d().power(n)?)?.top_ratio(&vol)?;
    let scale = factorial(n) * q(1i64 << n);
    let expected = ScalarExpr::profile(RHO, 1, Arg::CoordSquared(r as u16)).scale(&scale);
    let mut sep_ok = (&ratio - &expected).is_symbolic_zero();
    {
        // ρ = P₁(r²)P₂(z)P₃(r₁²): parameter derivatives drop out.
        let mut cs = standard_part(&chart);
        let mut f = alloc::vec![ScalarExpr::profile(1, 0, Arg::CoordSquared(r as u16)), ScalarExpr::profile(2, 0, Arg::Coord(0))];
        let mut e = alloc::vec![ScalarExpr::profile(1, 1, Arg::CoordSquared(r as u16)), ScalarExpr::profile(2, 0, Arg::Coord(0))];
        if n > 1 {
            f.push(ScalarExpr::profile(3, 0, Arg::CoordSquared(1)));
            e.push(ScalarExpr::profile(3, 0, Arg::CoordSquared(1)));
        }
        cs.push((2 * n, ScalarExpr::product(f.iter())));
        let a = DifferentialForm::one_form(&chart, cs)?;
        let rr = a.wedge(&a.ext_d().power(n)?)?.top_ratio(&vol)?;
        sep_ok &= (&rr - &ScalarExpr::product(e.iter()).scale(&scale)).is_symbolic_zero();
    }
    rep.push(Check::symbolic("contact-coefficient", sep_ok).with("coefficient", ratio.to_text(Some(&chart), &Default::default())));

    // K_ε, C and the ρ family.
    let samples = parameter_samples(n, points);
    let min_k = samples.iter().map(|&(z, s)| big_k(eps, z, s)).fold(f64::INFINITY, f64::min);
    if c <= -min_k {
        return Err(Error::ProfileViolation(format!("C = {c} does not exceed -min K = {}", -min_k)));
    }
    let mut collar_min = f64::INFINITY;
    let mut collar_samples = 0usize;
    let mut witness = Vec::new();
    for &(z, sum) in &samples {
        let k = big_k(eps, z, sum);
        let rho = rho_profile(k, c)?;
        check_rho(&rho, n, z, sum, k, c)?;
        let l = k + c;
        let mut ss = grid((l - COLLAR).max(0.0), l + COLLAR, points);
        if near_boundary(n, z, sum) {
            ss.extend(grid(0.0, l, 4 * points));
        }
        let env = Frozen(&rho);
        for s in ss {
            let mut p = alloc::vec![0.0; chart.dim()];
            p[0] = z;
            if n > 1 {
                p[1] = libm::sqrt(sum);
            }
            p[r] = libm::sqrt(s);
            let v = ratio.evaluate_in(&p, &env)?;
            collar_samples += 1;
            if v < collar_min {
                collar_min = v;
                witness = alloc::vec![z, sum, s];
            }
        }
    }
    rep.push(
        Check::grid("contact-near-boundary", collar_min > POSITIVITY_TOL)
            .with("collar_width", COLLAR)
            .with("samples", collar_samples)
            .with("min", collar_min)
            .with("argmin_z_sum_s", witness)
            .with("min_K", min_k),
    );

    // D_ot inside the line-core Lutz tube, radii (r₁, …, rₙ₋₁, r).
    let g = default_g(eps)?;
    check_g(&g, eps)?;
    let g_low = g.value(-1.0);
    let first_stratum = libm::sqrt(PI / 2.0);
    // Every stratum fixes two distinct radii, so one of them is some rᵢ with
    // i < n, and rᵢ ≤ g(−1) on all three pieces.
    let combinatorial = n == 1 || g_low < first_stratum;
    let bracket = volume_bracket(n);
    let mut piece_min = Vec::new();
    for piece in 0..3 {
        let mut m = f64::INFINITY;
        for zi in grid(-1.0, 1.0 - eps, points) {
            let z = if piece == 2 { -1.0 } else { zi };
            for u in grid(0.0, 1.0, points) {
                for v in grid(0.0, 1.0, if n > 2 { points } else { 1 }) {
                    let radii = piece_radii(n, piece, g.value(z), g_low, u, v);
                    let mut p = alloc::vec![0.0; 2 * n + 1];
                    for (i, rv) in radii.iter().enumerate() {
                        p[1 + 2 * i] = *rv;
                    }
                    m = m.min(bracket.evaluate_in(&p, &NoEnv)?);
                }
            }
        }
        piece_min.push(m);
    }
    let ok = combinatorial && piece_min.iter().all(|&m| m > POSITIVITY_TOL);
    rep.push(
        Check::grid("dot-pieces-avoid-locus", ok)
            .with("g_at_minus_one", g_low)
            .with("g_at_endpoints", alloc::vec![g.value(-1.0 + eps), g.value(1.0 - eps)])
            .with("piece_min_bracket", piece_min),
    );
    Ok(rep)
}

/// Radii on one piece of D_ot. `u`, `v` parametrize the rᵢ-ball (only the
/// first two of them vary) and the r-direction.
fn piece_radii(n: usize, piece: usize, gz: f64, g_low: f64, u: f64, v: f64) -> Vec<f64> {
    let mut radii = alloc::vec![0.0; n];
    let ball = match piece {
        1 => g_low,
        _ => g_low * u,
    };
    if n > 1 {
        // split the ball radius between r₁ and r₂
        let ang = v * PI / 2.0;
        radii[0] = ball * libm::cos(ang);
        if n > 2 {
            radii[1] = ball * libm::sin(ang);
        }
    }
    radii[n - 1] = match piece {
        0 => gz,
        1 => gz * u,
        _ => g_low * u,
    };
    radii
}
