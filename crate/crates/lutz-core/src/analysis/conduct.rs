use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use super::linalg::null_space;
use super::{contact_ratio, scan, CertKind, Certificate, Region, HOT_ZONE, LOCUS_TOL};
use crate::error::{Error, Result};
use crate::forms::{indices_of, DiagonalMetric, DifferentialForm, VectorField};
use crate::scalar::{Env, ScalarExpr};

pub const RK4_STEP: f64 = 1e-3;
pub const MAX_STEPS: usize = 10_000;
const NULL_SAMPLES: usize = 16;
/// Relative tolerance for the pairing of X with Null(τ).
pub const PAIRING_TOL: f64 = 1e-6;

/// τ(α) = ∗{α∧(dα)^{n−1}}.
pub fn tau(alpha: &DifferentialForm, g: &DiagonalMetric) -> Result<DifferentialForm> {
    let dim = alpha.chart().dim();
    if alpha.degree() != 1 || dim % 2 == 0 || dim < 3 {
        return Err(Error::BadRegion(format!("τ needs a 1-form in odd dimension ≥ 3, got {dim}")));
    }
    let n = (dim - 1) / 2;
    alpha.wedge(&alpha.ext_d().power(n - 1)?)?.hodge_star(g)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathRecord {
    pub start: Vec<f64>,
    /// +1 along X, −1 along −X (used when +X leaves the region).
    pub direction: i8,
    pub steps: usize,
    pub arrival: Vec<f64>,
    pub arrival_value: f64,
    pub null_checks: usize,
    pub max_pairing: f64,
}

fn rk4_step(x: &VectorField, p: &[f64], h: f64, env: &dyn Env) -> Result<Vec<f64>> {
    let add = |a: &[f64], b: &[f64], s: f64| -> Vec<f64> { a.iter().zip(b).map(|(u, v)| u + s * v).collect() };
    let k1 = x.evaluate_in(p, env)?;
    let k2 = x.evaluate_in(&add(p, &k1, h / 2.0), env)?;
    let k3 = x.evaluate_in(&add(p, &k2, h / 2.0), env)?;
    let k4 = x.evaluate_in(&add(p, &k3, h), env)?;
    Ok((0..p.len()).map(|i| p[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect())
}

enum Trace {
    Arrived(usize, Vec<f64>, f64),
    Escaped,
}

fn trace(
    ratio: &ScalarExpr,
    x: &VectorField,
    region: &Region,
    start: &[f64],
    h: f64,
) -> Result<Trace> {
    let env = region.env();
    let mut p = start.to_vec();
    for step in 0..=MAX_STEPS {
        let v = ratio.evaluate_in(&p, env)?;
        if v > HOT_ZONE {
            return Ok(Trace::Arrived(step, p, v));
        }
        if step == MAX_STEPS {
            break;
        }
        p = rk4_step(x, &p, h, env)?;
        if !region.contains(&p) {
            return Ok(Trace::Escaped);
        }
    }
    Err(Error::MaxStepsExceeded(format!("{start:?}")))
}

/// Antisymmetric matrix of a numeric 2-form.
fn two_form_matrix(vals: &[(u32, f64)], dim: usize) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; dim]; dim];
    for (k, v) in vals {
        let ij = indices_of(*k);
        m[ij[0]][ij[1]] = *v;
        m[ij[1]][ij[0]] = -*v;
    }
    m
}

/// Largest relative g-pairing of `xv` with a null basis of `t` at `p`, or
/// None when the metric degenerates there.
fn null_pairing(
    t: &DifferentialForm,
    g: &DiagonalMetric,
    xv: &[f64],
    p: &[f64],
    env: &dyn Env,
) -> Result<Option<f64>> {
    let dim = p.len();
    let gd = match g.entries_at(p) {
        Ok(v) => v,
        Err(Error::PoleOnRegion(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let m = two_form_matrix(&t.evaluate_in(p, env)?, dim);
    let basis = null_space(&m, dim, 1e-9);
    let norm = |v: &[f64]| libm::sqrt(v.iter().zip(&gd).map(|(a, w)| a * a * w).sum::<f64>());
    let nx = norm(xv);
    let mut worst: f64 = 0.0;
    for b in &basis {
        let pair: f64 = xv.iter().zip(b).zip(&gd).map(|((a, c), w)| a * c * w).sum();
        let denom = nx * norm(b);
        if denom > 0.0 {
            worst = worst.max(libm::fabs(pair) / denom);
        }
    }
    Ok(Some(worst))
}

/// Flow every grid zero of the contact coefficient along X until it reaches
/// the hot zone, and check at 16 path samples that X is g-orthogonal to
/// Null(τ).
pub fn conductivity_check(
    alpha: &DifferentialForm,
    region: &Region,
    x: &VectorField,
    g: &DiagonalMetric,
) -> Result<Certificate> {
    let ratio = contact_ratio(alpha, region)?;
    let t = tau(alpha, g)?;
    let env = region.env();
    let samples = region.samples(ratio.dependencies());
    let sc = scan(&samples, LOCUS_TOL, |p| ratio.evaluate_in(p, env))?;
    let mut cert = Certificate::grid(CertKind::PathTrace, HOT_ZONE);
    for z in &sc.zeros {
        let start = &z.point;
        let (direction, steps, arrival, value) = match trace(&ratio, x, region, start, RK4_STEP)? {
            Trace::Arrived(s, p, v) => (1i8, s, p, v),
            Trace::Escaped => match trace(&ratio, x, region, start, -RK4_STEP)? {
                Trace::Arrived(s, p, v) => (-1i8, s, p, v),
                Trace::Escaped => return Err(Error::PathEscapedRegion(format!("{start:?}"))),
            },
        };
        let total = RK4_STEP * steps.max(1) as f64 * direction as f64;
        let sub = total / NULL_SAMPLES as f64;
        let mut p = start.clone();
        let mut checks = 0;
        let mut worst: f64 = 0.0;
        for _ in 0..NULL_SAMPLES {
            p = rk4_step(x, &p, sub, env)?;
            let xv = x.evaluate_in(&p, env)?;
            if let Some(w) = null_pairing(&t, g, &xv, &p, env)? {
                checks += 1;
                worst = worst.max(w);
            }
        }
        cert.witnesses.push(arrival.clone());
        cert.paths.push(PathRecord {
            start: start.clone(),
            direction,
            steps,
            arrival,
            arrival_value: value,
            null_checks: checks,
            max_pairing: worst,
        });
    }
    cert.samples = cert.paths.len();
    cert.min = cert.paths.iter().map(|p| p.arrival_value).fold(f64::INFINITY, f64::min);
    cert.max = cert.paths.iter().map(|p| p.steps as f64).fold(0.0, f64::max);
    cert.zeros = sc.zeros.iter().map(|z| z.point.clone()).collect();
    Ok(cert)
}
