//! Piecewise cubic-Hermite profiles and an environment binding them to
//! opaque profile ids.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Env;

pub const CONTINUITY_TOL: f64 = 1e-12;

/// One cubic on [x0, x1] given by end values and end slopes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitePiece {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub m0: f64,
    pub m1: f64,
}

impl HermitePiece {
    /// Derivative of order `k` at x (x clamped to the piece).
    pub fn eval(&self, k: u8, x: f64) -> f64 {
        let h = self.x1 - self.x0;
        let t = ((x - self.x0) / h).clamp(0.0, 1.0);
        let (y0, y1, m0, m1) = (self.y0, self.y1, self.m0 * h, self.m1 * h);
        // p(t) = a + b t + c t² + d t³
        let a = y0;
        let b = m0;
        let c = 3.0 * (y1 - y0) - 2.0 * m0 - m1;
        let d = 2.0 * (y0 - y1) + m0 + m1;
        match k {
            0 => a + t * (b + t * (c + t * d)),
            1 => (b + t * (2.0 * c + 3.0 * t * d)) / h,
            2 => (2.0 * c + 6.0 * t * d) / (h * h),
            3 => 6.0 * d / (h * h * h),
            _ => 0.0,
        }
    }
}

/// A C⁰ chain of Hermite pieces, extended affinely beyond both ends.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseProfile {
    pieces: Vec<HermitePiece>,
}

impl PiecewiseProfile {
    /// Pieces must be ordered, abut, and agree in value at the joins.
    pub fn new(pieces: Vec<HermitePiece>) -> Result<PiecewiseProfile> {
        if pieces.is_empty() {
            return Err(Error::ProfileViolation("no pieces".into()));
        }
        for p in &pieces {
            if !(p.x1 > p.x0) {
                return Err(Error::ProfileViolation(format!("empty piece [{}, {}]", p.x0, p.x1)));
            }
        }
        for w in pieces.windows(2) {
            if libm::fabs(w[0].x1 - w[1].x0) > CONTINUITY_TOL {
                return Err(Error::ProfileViolation(format!("gap at {}", w[0].x1)));
            }
            if libm::fabs(w[0].y1 - w[1].y0) > CONTINUITY_TOL {
                return Err(Error::ProfileViolation(format!(
                    "jump {} → {} at x = {}",
                    w[0].y1, w[1].y0, w[0].x1
                )));
            }
        }
        Ok(PiecewiseProfile { pieces })
    }

    /// C¹ interpolant through (x, y, slope) knots.
    pub fn hermite(knots: &[(f64, f64, f64)]) -> Result<PiecewiseProfile> {
        if knots.len() < 2 {
            return Err(Error::ProfileViolation("need two knots".into()));
        }
        let pieces = knots
            .windows(2)
            .map(|w| HermitePiece { x0: w[0].0, x1: w[1].0, y0: w[0].1, y1: w[1].1, m0: w[0].2, m1: w[1].2 })
            .collect();
        Self::new(pieces)
    }

    /// Smooth step from `a` at x ≤ x0 to `b` at x ≥ x1, flat at both ends.
    pub fn step(x0: f64, x1: f64, a: f64, b: f64) -> Result<PiecewiseProfile> {
        Self::hermite(&[(x0, a, 0.0), (x1, b, 0.0)])
    }

    pub fn pieces(&self) -> &[HermitePiece] {
        &self.pieces
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.pieces[0].x0, self.pieces[self.pieces.len() - 1].x1)
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.pieces.iter().map(|p| p.x0).collect();
        out.push(self.domain().1);
        out
    }

    /// Derivative of order `k` (0 ≤ k ≤ 3; higher orders are 0).
    pub fn eval(&self, k: u8, x: f64) -> f64 {
        let first = &self.pieces[0];
        let last = &self.pieces[self.pieces.len() - 1];
        if x < first.x0 {
            return match k {
                0 => first.y0 + first.m0 * (x - first.x0),
                1 => first.m0,
                _ => 0.0,
            };
        }
        if x > last.x1 {
            return match k {
                0 => last.y1 + last.m1 * (x - last.x1),
                1 => last.m1,
                _ => 0.0,
            };
        }
        let p = self.pieces.iter().find(|p| x <= p.x1).unwrap_or(last);
        p.eval(k, x)
    }

    pub fn value(&self, x: f64) -> f64 {
        self.eval(0, x)
    }

    /// Largest value jump at the joins.
    pub fn continuity_defect(&self) -> f64 {
        self.pieces.windows(2).map(|w| libm::fabs(w[0].y1 - w[1].y0)).fold(0.0, f64::max)
    }

    /// Non-decreasing on [lo, hi], checked at `samples` points and all
    /// breakpoints inside.
    pub fn is_non_decreasing(&self, lo: f64, hi: f64, samples: usize) -> bool {
        let mut xs: Vec<f64> = (0..samples.max(2))
            .map(|i| lo + (hi - lo) * i as f64 / (samples.max(2) - 1) as f64)
            .collect();
        xs.extend(self.breakpoints().into_iter().filter(|b| *b >= lo && *b <= hi));
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.windows(2).all(|w| self.value(w[1]) >= self.value(w[0]) - CONTINUITY_TOL)
    }
}

/// Parameters and profiles by id.
#[derive(Clone, Debug, Default)]
pub struct ProfileEnv {
    pub params: BTreeMap<u16, f64>,
    pub profiles: BTreeMap<u16, PiecewiseProfile>,
}

impl ProfileEnv {
    pub fn new() -> ProfileEnv {
        ProfileEnv::default()
    }

    pub fn with_param(mut self, id: u16, v: f64) -> ProfileEnv {
        self.params.insert(id, v);
        self
    }

    pub fn with_profile(mut self, id: u16, p: PiecewiseProfile) -> ProfileEnv {
        self.profiles.insert(id, p);
        self
    }
}

impl Env for ProfileEnv {
    fn param(&self, id: u16) -> Option<f64> {
        self.params.get(&id).copied()
    }

    fn profile(&self, id: u16, order: u8, x: f64) -> Option<f64> {
        self.profiles.get(&id).map(|p| p.eval(order, x))
    }
}
