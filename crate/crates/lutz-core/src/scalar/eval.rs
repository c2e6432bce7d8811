use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{q_to_f64, Arg, Base, ScalarExpr};
use crate::chart::{Chart, CoordKind};
use crate::error::{Error, Result};

/// Atoms with negative exponents whose value is below this are poles.
pub const POLE_TOL: f64 = 1e-12;
/// Probabilistic zero-test tolerance.
pub const ZERO_TOL: f64 = 1e-9;
pub const ZERO_SAMPLES: usize = 64;

/// Numeric values of parameters and opaque profiles.
pub trait Env {
    fn param(&self, _id: u16) -> Option<f64> {
        None
    }
    fn profile(&self, _id: u16, _order: u8, _x: f64) -> Option<f64> {
        None
    }
}

pub struct NoEnv;

impl Env for NoEnv {}

#[derive(Clone, Debug, PartialEq)]
pub enum ZeroTest {
    SymbolicZero,
    ProbablyZero,
    NonZero(Vec<f64>),
}

impl ZeroTest {
    pub fn is_zero(&self) -> bool {
        !matches!(self, ZeroTest::NonZero(_))
    }
}

pub(crate) fn powi(x: f64, e: i32) -> f64 {
    let mut base = if e < 0 { 1.0 / x } else { x };
    let mut n = e.unsigned_abs();
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

fn norm(mask: u32, p: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, x) in p.iter().enumerate() {
        if mask & (1 << i) != 0 {
            s += x * x;
        }
    }
    libm::sqrt(s)
}

fn arg_value(a: Arg, p: &[f64]) -> f64 {
    match a {
        Arg::Coord(i) => p[i as usize],
        Arg::CoordSquared(i) => p[i as usize] * p[i as usize],
        Arg::Norm(m) => norm(m, p),
    }
}

fn base_value(b: Base, p: &[f64], env: &dyn Env) -> Result<f64> {
    Ok(match b {
        Base::Coord(i) => p[i as usize],
        Base::Norm(m) => norm(m, p),
        Base::Sin(a) => libm::sin(arg_value(a, p)),
        Base::Cos(a) => libm::cos(arg_value(a, p)),
        Base::Param(id) => env
            .param(id)
            .ok_or_else(|| Error::UnboundSymbol(format!("parameter {id}")))?,
        Base::Profile { id, order, arg } => env
            .profile(id, order, arg_value(arg, p))
            .ok_or_else(|| Error::UnboundSymbol(format!("profile {id} order {order}")))?,
    })
}

impl ScalarExpr {
    pub fn evaluate(&self, point: &[f64]) -> Result<f64> {
        self.evaluate_in(point, &NoEnv)
    }

    pub fn evaluate_in(&self, point: &[f64], env: &dyn Env) -> Result<f64> {
        let mut total = 0.0;
        for (m, c) in self.terms() {
            let mut v = q_to_f64(c);
            for a in m {
                let x = base_value(a.base, point, env)?;
                if a.exp < 0 && libm::fabs(x) < POLE_TOL {
                    return Err(Error::DomainPole(format!("{:?} vanishes at {point:?}", a.base)));
                }
                v *= powi(x, a.exp);
            }
            total += v;
        }
        Ok(total)
    }

    pub fn is_zero(&self, chart: &Chart, seed: u64) -> ZeroTest {
        self.is_zero_in(chart, &NoEnv, seed)
    }

    /// Symbolic first, then 64 seeded samples at tolerance 1e-9. The first
    /// sample is the chart's anchor point (0 where the kind allows it).
    pub fn is_zero_in(&self, chart: &Chart, env: &dyn Env, seed: u64) -> ZeroTest {
        if self.is_symbolic_zero() {
            return ZeroTest::SymbolicZero;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let anchor: Vec<f64> = chart
            .coords()
            .iter()
            .map(|c| match c.kind {
                CoordKind::BoundedLinear(a, b) if !(a <= 0.0 && 0.0 <= b) => 0.5 * (a + b),
                _ => 0.0,
            })
            .collect();
        let mut taken = 0;
        let mut attempts = 0;
        let mut point = anchor;
        while taken < ZERO_SAMPLES && attempts < 50 * ZERO_SAMPLES {
            attempts += 1;
            if let Ok(v) = self.evaluate_in(&point, env) {
                taken += 1;
                if !(libm::fabs(v) <= ZERO_TOL) {
                    return ZeroTest::NonZero(point);
                }
            }
            point = chart
                .coords()
                .iter()
                .map(|c| {
                    let (lo, hi) = c.kind.default_range();
                    lo + (hi - lo) * rng.gen::<f64>()
                })
                .collect();
        }
        ZeroTest::ProbablyZero
    }
}
