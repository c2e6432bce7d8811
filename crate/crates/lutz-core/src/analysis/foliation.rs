use alloc::format;
use alloc::vec::Vec;

use super::{scan, CertKind, Certificate, Region, Sample, LOCUS_TOL};
use crate::error::{Error, Result};
use crate::forms::{DifferentialForm, VectorField};
use crate::scalar::{q, ScalarExpr, Value};

/// A coordinate level set {x_coord = value}.
#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub coord: usize,
    pub value: Value,
}

impl Level {
    pub fn new(coord: usize, value: Value) -> Level {
        Level { coord, value }
    }
}

/// Solve V⌟Ω = (α∧(dα)^{n−1})|_Σ on the level set Σ; Ω must be a
/// single-component top form on the level's chart.
pub fn char_foliation(
    alpha: &DifferentialForm,
    level: &Level,
    omega: &DifferentialForm,
) -> Result<VectorField> {
    let dim = alpha.chart().dim();
    if alpha.degree() != 1 || dim % 2 == 0 || dim < 3 {
        return Err(Error::BadRegion(format!("characteristic foliation needs a contact chart, dim {dim}")));
    }
    let n = (dim - 1) / 2;
    let beta = alpha
        .wedge(&alpha.ext_d().power(n - 1)?)?
        .restrict(&[(level.coord, level.value.clone())])?;
    if omega.chart() != beta.chart() {
        return Err(Error::ChartMismatch);
    }
    let sub_dim = beta.chart().dim();
    if omega.degree() != sub_dim {
        return Err(Error::NotTopDegree);
    }
    let w = omega.components().values().next().ok_or(Error::ZeroVolume)?;
    let w_inv = w.inverse()?;
    let mut comps = Vec::with_capacity(sub_dim);
    for k in 0..sub_dim {
        let rest: Vec<usize> = (0..sub_dim).filter(|&i| i != k).collect();
        let c = beta.component(&rest);
        if c.is_symbolic_zero() {
            continue;
        }
        let s = if k % 2 == 0 { 1 } else { -1 };
        comps.push((k, (&c * &w_inv).scale(&q(s))));
    }
    VectorField::new(beta.chart(), comps)
}

#[derive(Clone, Debug)]
pub struct DividingReport {
    /// α(X) restricted to Σ.
    pub pairing: ScalarExpr,
    pub zeros: Vec<Sample>,
    pub positive: usize,
    pub negative: usize,
    pub certificate: Certificate,
}

/// Zeros and sign regions of α(X) on Σ, sampled on `sigma_region` (a region
/// on the level's chart).
pub fn dividing_set(
    level: &Level,
    alpha: &DifferentialForm,
    x: &VectorField,
    sigma_region: &Region,
) -> Result<DividingReport> {
    let assign = [(level.coord, level.value.clone())];
    let pairing = DifferentialForm::scalar(alpha.chart(), alpha_of(alpha, x)?).restrict(&assign)?;
    let normal = DifferentialForm::scalar(alpha.chart(), x.component(level.coord)).restrict(&assign)?;
    if pairing.chart() != sigma_region.chart() {
        return Err(Error::ChartMismatch);
    }
    let pairing = pairing.components().get(&0).cloned().unwrap_or_else(ScalarExpr::zero);
    let normal = normal.components().get(&0).cloned().unwrap_or_else(ScalarExpr::zero);
    let env = sigma_region.env();
    let samples = sigma_region.samples(pairing.dependencies() | normal.dependencies());
    if samples.is_empty() {
        return Err(Error::EmptyRegion);
    }
    for s in &samples {
        if libm::fabs(normal.evaluate_in(&s.point, env)?) <= LOCUS_TOL {
            return Err(Error::NotTransverse(format!("normal component vanishes at {:?}", s.point)));
        }
    }
    let mut positive = 0;
    let mut negative = 0;
    let sc = scan(&samples, LOCUS_TOL, |p| {
        let v = pairing.evaluate_in(p, env)?;
        if v > LOCUS_TOL {
            positive += 1;
        } else if v < -LOCUS_TOL {
            negative += 1;
        }
        Ok(v)
    })?;
    let mut cert = Certificate::grid(CertKind::GridZeroSet, LOCUS_TOL);
    cert.samples = sc.count;
    cert.min = sc.min;
    cert.max = sc.max;
    cert.zeros = sc.zeros.iter().map(|s| s.point.clone()).collect();
    Ok(DividingReport { pairing, zeros: sc.zeros, positive, negative, certificate: cert })
}

/// α(X) for a 1-form.
pub fn alpha_of(alpha: &DifferentialForm, x: &VectorField) -> Result<ScalarExpr> {
    let f = alpha.interior(x)?;
    Ok(f.components().get(&0).cloned().unwrap_or_else(ScalarExpr::zero))
}
