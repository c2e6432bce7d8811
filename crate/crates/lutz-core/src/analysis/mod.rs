//! Grid certification of contact and confoliation conditions.

mod classify;
mod conduct;
mod foliation;
pub mod linalg;
mod region;

pub use classify::{
    blend, classify, contact_ratio, non_contact_locus, Class, Classification, LocusReport,
    Stratum, StratumCoverage,
};
pub use conduct::{conductivity_check, tau, PathRecord, MAX_STEPS, PAIRING_TOL, RK4_STEP};
pub use foliation::{alpha_of, char_foliation, dividing_set, DividingReport, Level};
pub use region::{Axis, Region, Sample, Spacing, AXIS_EPS, DEFAULT_ANGLE_POINTS, DEFAULT_POINTS};

use alloc::vec::Vec;
use serde::Serialize;

pub const POSITIVITY_TOL: f64 = 1e-9;
pub const LOCUS_TOL: f64 = 1e-9;
pub const HOT_ZONE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertKind {
    SymbolicIdentity,
    GridPositive,
    GridNonNegative,
    GridZeroSet,
    PathTrace,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: CertKind,
    pub tolerance: f64,
    pub samples: usize,
    pub min: f64,
    pub max: f64,
    /// Points of interest: negative values, or the first arrival points.
    pub witnesses: Vec<Vec<f64>>,
    /// Every sample with |value| ≤ tolerance.
    pub zeros: Vec<Vec<f64>>,
    pub paths: Vec<PathRecord>,
}

impl Certificate {
    pub fn symbolic() -> Certificate {
        Certificate {
            kind: CertKind::SymbolicIdentity,
            tolerance: 0.0,
            samples: 0,
            min: 0.0,
            max: 0.0,
            witnesses: Vec::new(),
            zeros: Vec::new(),
            paths: Vec::new(),
        }
    }

    pub(crate) fn grid(kind: CertKind, tolerance: f64) -> Certificate {
        Certificate {
            kind,
            tolerance,
            samples: 0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            witnesses: Vec::new(),
            zeros: Vec::new(),
            paths: Vec::new(),
        }
    }
}

/// Scan `f` over the samples: (min, max, zeros, most negative point).
pub(crate) struct Scan {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub zeros: Vec<Sample>,
    pub argmin: Option<Vec<f64>>,
}

pub(crate) fn scan<F>(samples: &[Sample], tol: f64, mut f: F) -> crate::Result<Scan>
where
    F: FnMut(&[f64]) -> crate::Result<f64>,
{
    let mut s = Scan { min: f64::INFINITY, max: f64::NEG_INFINITY, count: 0, zeros: Vec::new(), argmin: None };
    for smp in samples {
        let v = f(&smp.point)?;
        s.count += 1;
        if v < s.min {
            s.min = v;
            s.argmin = Some(smp.point.clone());
        }
        if v > s.max {
            s.max = v;
        }
        if libm::fabs(v) <= tol {
            s.zeros.push(smp.clone());
        }
    }
    Ok(s)
}
