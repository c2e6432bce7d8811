//! Check records shared by every construction.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::Serialize;

use crate::analysis::{CertKind, Certificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    SymbolicPass,
    GridPass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Datum {
    Bool(bool),
    Int(i64),
    Real(f64),
    Text(String),
    Reals(Vec<f64>),
    Texts(Vec<String>),
    Points(Vec<Vec<f64>>),
}

impl From<bool> for Datum {
    fn from(v: bool) -> Datum {
        Datum::Bool(v)
    }
}

impl From<i64> for Datum {
    fn from(v: i64) -> Datum {
        Datum::Int(v)
    }
}

impl From<usize> for Datum {
    fn from(v: usize) -> Datum {
        Datum::Int(v as i64)
    }
}

impl From<f64> for Datum {
    fn from(v: f64) -> Datum {
        Datum::Real(v)
    }
}

impl From<&str> for Datum {
    fn from(v: &str) -> Datum {
        Datum::Text(v.to_string())
    }
}

impl From<String> for Datum {
    fn from(v: String) -> Datum {
        Datum::Text(v)
    }
}

impl From<Vec<f64>> for Datum {
    fn from(v: Vec<f64>) -> Datum {
        Datum::Reals(v)
    }
}

impl From<Vec<String>> for Datum {
    fn from(v: Vec<String>) -> Datum {
        Datum::Texts(v)
    }
}

impl From<Vec<Vec<f64>>> for Datum {
    fn from(v: Vec<Vec<f64>>) -> Datum {
        Datum::Points(v)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub payload: BTreeMap<String, Datum>,
}

impl Check {
    pub fn new(name: &str, status: Status) -> Check {
        Check { name: name.to_string(), status, payload: BTreeMap::new() }
    }

    /// SymbolicPass if `ok`, else Fail.
    pub fn symbolic(name: &str, ok: bool) -> Check {
        Check::new(name, if ok { Status::SymbolicPass } else { Status::Fail })
    }

    /// GridPass if `ok`, else Fail.
    pub fn grid(name: &str, ok: bool) -> Check {
        Check::new(name, if ok { Status::GridPass } else { Status::Fail })
    }

    pub fn with(mut self, key: &str, v: impl Into<Datum>) -> Check {
        self.payload.insert(key.to_string(), v.into());
        self
    }

    /// Attach the summary numbers of a grid certificate.
    pub fn with_certificate(self, c: &Certificate) -> Check {
        let kind = match c.kind {
            CertKind::SymbolicIdentity => "symbolic-identity",
            CertKind::GridPositive => "grid-positive",
            CertKind::GridNonNegative => "grid-non-negative",
            CertKind::GridZeroSet => "grid-zero-set",
            CertKind::PathTrace => "path-trace",
        };
        let mut out = self.with("certificate", kind).with("samples", c.samples);
        if c.samples > 0 {
            out = out.with("min", c.min).with("max", c.max);
        }
        out.with("zeros", c.zeros.len())
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Parameters echoed into reports. Unused ones stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Params {
    pub n: usize,
    pub k: Option<usize>,
    pub epsilon: Option<f64>,
    #[serde(rename = "C")]
    pub big_c: Option<f64>,
    #[serde(rename = "A")]
    pub a: Option<f64>,
    #[serde(rename = "B")]
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub grid: usize,
}

impl Params {
    pub fn new(n: usize, grid: usize) -> Params {
        Params { n, grid, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstructionReport {
    pub name: String,
    pub params: Params,
    pub checks: Vec<Check>,
    /// Findings that are reported, not asserted.
    pub notes: Vec<String>,
}

impl ConstructionReport {
    pub fn new(name: &str, params: Params) -> ConstructionReport {
        ConstructionReport { name: name.to_string(), params, checks: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect()
    }
}
