use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::Serialize;

use super::{scan, CertKind, Certificate, Region, Sample, LOCUS_TOL, POSITIVITY_TOL};
use crate::error::{Error, Result};
use crate::forms::DifferentialForm;
use crate::scalar::ScalarExpr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Class {
    Contact,
    Confoliation,
    Neither,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub class: Class,
    pub certificate: Certificate,
    /// Coefficient of α∧(dα)ⁿ against the region's declared volume.
    pub ratio: ScalarExpr,
}

fn check_one_form(alpha: &DifferentialForm, region: &Region) -> Result<usize> {
    if alpha.chart() != region.chart() {
        return Err(Error::ChartMismatch);
    }
    let dim = alpha.chart().dim();
    if alpha.degree() != 1 || dim % 2 == 0 {
        return Err(Error::BadRegion(format!(
            "need a 1-form on an odd-dimensional chart, got degree {} in dimension {dim}",
            alpha.degree()
        )));
    }
    Ok((dim - 1) / 2)
}

/// top_ratio(α∧(dα)ⁿ, declared volume).
pub fn contact_ratio(alpha: &DifferentialForm, region: &Region) -> Result<ScalarExpr> {
    let n = check_one_form(alpha, region)?;
    let top = alpha.wedge(&alpha.ext_d().power(n)?)?;
    top.top_ratio(&region.volume())
}

pub fn classify(alpha: &DifferentialForm, region: &Region) -> Result<Classification> {
    let ratio = contact_ratio(alpha, region)?;
    let never_zero = alpha
        .components()
        .values()
        .any(|c| c.as_constant().map_or(false, |v| v != num_traits::Zero::zero()));
    let mut active = ratio.dependencies();
    if !never_zero {
        active |= alpha.dependencies();
    }
    let samples = region.samples(active);
    if samples.is_empty() {
        return Err(Error::EmptyRegion);
    }
    let env = region.env();
    if !never_zero {
        for s in &samples {
            let vals = alpha.evaluate_in(&s.point, env)?;
            if vals.iter().all(|(_, v)| libm::fabs(*v) <= POSITIVITY_TOL) {
                return Err(Error::VanishingForm(format!("{:?}", s.point)));
            }
        }
    }
    let sc = scan(&samples, POSITIVITY_TOL, |p| ratio.evaluate_in(p, env))?;
    let (class, kind) = if sc.min > POSITIVITY_TOL {
        (Class::Contact, CertKind::GridPositive)
    } else if sc.min >= -POSITIVITY_TOL {
        (Class::Confoliation, CertKind::GridNonNegative)
    } else {
        (Class::Neither, CertKind::GridNonNegative)
    };
    let mut cert = Certificate::grid(kind, POSITIVITY_TOL);
    cert.samples = sc.count;
    cert.min = sc.min;
    cert.max = sc.max;
    cert.zeros = sc.zeros.into_iter().map(|s| s.point).collect();
    if class == Class::Neither {
        cert.witnesses.extend(sc.argmin);
    }
    Ok(Classification { class, certificate: cert, ratio })
}

/// A candidate stratum: the listed coordinates fixed at the listed values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stratum {
    pub name: String,
    pub fixed: Vec<(usize, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StratumCoverage {
    pub name: String,
    /// Grid nodes nearest to the stratum.
    pub shadow_nodes: usize,
    /// Shadow nodes with a grid zero within one cell.
    pub covered: usize,
}

#[derive(Clone, Debug)]
pub struct LocusReport {
    pub zeros: Vec<Sample>,
    pub certificate: Certificate,
    pub strata: Vec<StratumCoverage>,
    /// Grid zeros farther than one cell from every candidate stratum.
    pub unmatched_zeros: usize,
}

impl LocusReport {
    /// Grid zeros and strata agree within one cell in both directions.
    pub fn matches(&self) -> bool {
        self.unmatched_zeros == 0 && self.strata.iter().all(|s| s.covered == s.shadow_nodes)
    }
}

pub fn non_contact_locus(
    alpha: &DifferentialForm,
    region: &Region,
    strata: &[Stratum],
) -> Result<LocusReport> {
    let ratio = contact_ratio(alpha, region)?;
    let active = ratio.dependencies() | region.constraint_mask();
    let samples = region.samples(active);
    if samples.is_empty() {
        return Err(Error::EmptyRegion);
    }
    let sc = scan(&samples, LOCUS_TOL, |p| ratio.evaluate_in(p, region.env()))?;
    let axes = region.effective_axes(active);
    let inside: Vec<&Stratum> = strata
        .iter()
        .filter(|s| s.fixed.iter().all(|&(i, v)| axes[i].contains(v)))
        .collect();
    let near = |z: &Sample, s: &Stratum| {
        s.fixed
            .iter()
            .all(|&(i, v)| libm::fabs(z.index[i] as f64 - axes[i].frac_index(v)) <= 1.0 + 1e-9)
    };
    let unmatched_zeros = sc.zeros.iter().filter(|z| !inside.iter().any(|s| near(z, s))).count();
    let zero_set: BTreeSet<Vec<usize>> = sc.zeros.iter().map(|z| z.index.clone()).collect();
    let mut coverage = Vec::new();
    for s in &inside {
        let fixed_mask = s.fixed.iter().fold(0u32, |m, &(i, _)| m | (1 << i));
        let free: Vec<usize> =
            (0..axes.len()).filter(|i| active & (1 << i) != 0 && fixed_mask & (1 << i) == 0).collect();
        let mut idx: Vec<usize> = samples[0].index.clone();
        for &(i, v) in &s.fixed {
            let f = libm::round(axes[i].frac_index(v)).max(0.0) as usize;
            idx[i] = f.min(axes[i].points.saturating_sub(1));
        }
        for &i in &free {
            idx[i] = 0;
        }
        let (mut shadow, mut covered) = (0, 0);
        loop {
            let point: Vec<f64> = (0..axes.len()).map(|i| axes[i].value(idx[i])).collect();
            if region.contains(&point) {
                shadow += 1;
                if has_zero_near(&zero_set, &idx, &s.fixed) {
                    covered += 1;
                }
            }
            let mut k = 0;
            while k < free.len() {
                let a = free[k];
                idx[a] += 1;
                if idx[a] < axes[a].points {
                    break;
                }
                idx[a] = 0;
                k += 1;
            }
            if k == free.len() {
                break;
            }
        }
        coverage.push(StratumCoverage { name: s.name.clone(), shadow_nodes: shadow, covered });
    }
    let mut cert = Certificate::grid(CertKind::GridZeroSet, LOCUS_TOL);
    cert.samples = sc.count;
    cert.min = sc.min;
    cert.max = sc.max;
    cert.zeros = sc.zeros.iter().map(|s| s.point.clone()).collect();
    Ok(LocusReport { zeros: sc.zeros, certificate: cert, strata: coverage, unmatched_zeros })
}

fn has_zero_near(zeros: &BTreeSet<Vec<usize>>, idx: &[usize], fixed: &[(usize, f64)]) -> bool {
    let k = fixed.len();
    let combos = 3usize.pow(k as u32);
    for c in 0..combos {
        let mut probe = idx.to_vec();
        let mut rest = c;
        let mut ok = true;
        for &(i, _) in fixed {
            let off = (rest % 3) as i64 - 1;
            rest /= 3;
            let v = probe[i] as i64 + off;
            if v < 0 {
                ok = false;
                break;
            }
            probe[i] = v as usize;
        }
        if ok && zeros.contains(&probe) {
            return true;
        }
    }
    false
}

/// tilde-α = (1 − f)α + fω, classified on the region.
pub fn blend(
    alpha: &DifferentialForm,
    omega: &DifferentialForm,
    f: &ScalarExpr,
    region: &Region,
) -> Result<(DifferentialForm, Classification)> {
    f.check_on(region.chart())?;
    for s in region.samples(f.dependencies()) {
        let v = f.evaluate_in(&s.point, region.env())?;
        if !(-1e-12..=1.0 + 1e-12).contains(&v) {
            return Err(Error::BadBlendRange(format!("f = {v} at {:?}", s.point)));
        }
    }
    let one_minus = &ScalarExpr::one() - f;
    let tilde = alpha.scale(&one_minus).add(&omega.scale(f))?;
    let cls = classify(&tilde, region)?;
    Ok((tilde, cls))
}
