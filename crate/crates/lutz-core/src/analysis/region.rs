use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chart::CoordKind;
use crate::error::{Error, Result};
use crate::forms::{ChartRef, DifferentialForm};
use crate::scalar::{Env, NoEnv, ScalarExpr};

pub const DEFAULT_POINTS: usize = 25;
pub const DEFAULT_ANGLE_POINTS: usize = 8;
pub const DEFAULT_BUDGET: usize = 1 << 18;
pub const AXIS_EPS: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Spacing {
    Uniform,
    /// Uniform in x², the natural spacing for radial coordinates whose
    /// expressions only see rᵢ².
    SquareUniform,
    /// Uniform on a circle; the upper end is not sampled.
    Periodic,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Axis {
    pub fn value(&self, k: usize) -> f64 {
        let n = self.points;
        if n <= 1 {
            return match self.spacing {
                Spacing::Periodic => self.lo,
                _ => 0.5 * (self.lo + self.hi),
            };
        }
        let t = k as f64;
        match self.spacing {
            Spacing::Uniform => self.lo + (self.hi - self.lo) * t / (n - 1) as f64,
            Spacing::SquareUniform => {
                let (a, b) = (self.lo * self.lo, self.hi * self.hi);
                libm::sqrt(a + (b - a) * t / (n - 1) as f64)
            }
            Spacing::Periodic => self.lo + (self.hi - self.lo) * t / n as f64,
        }
    }

    /// Position of `v` in index units.
    pub fn frac_index(&self, v: f64) -> f64 {
        let n = self.points.max(1);
        if n == 1 {
            return 0.0;
        }
        match self.spacing {
            Spacing::Uniform => (v - self.lo) / (self.hi - self.lo) * (n - 1) as f64,
            Spacing::SquareUniform => {
                let (a, b) = (self.lo * self.lo, self.hi * self.hi);
                (v * v - a) / (b - a) * (n - 1) as f64
            }
            Spacing::Periodic => (v - self.lo) / (self.hi - self.lo) * n as f64,
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        match self.spacing {
            Spacing::Periodic => true,
            _ => v >= self.lo - 1e-12 && v <= self.hi + 1e-12,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Sample {
    /// Grid index per coordinate (representative index on inactive axes).
    pub index: Vec<usize>,
    pub point: Vec<f64>,
}

/// Box, constraints and a deterministic grid on a chart.
#[derive(Clone)]
pub struct Region {
    chart: ChartRef,
    axes: Vec<Axis>,
    constraints: Vec<ScalarExpr>,
    volume: Option<DifferentialForm>,
    env: Option<Arc<dyn Env + Send + Sync>>,
    seed: u64,
    jitter: f64,
    budget: usize,
}

impl core::fmt::Debug for Region {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Region")
            .field("axes", &self.axes)
            .field("constraints", &self.constraints.len())
            .field("seed", &self.seed)
            .finish()
    }
}

impl Region {
    /// Default box from the coordinate kinds: angles over a full period at
    /// 8 points, radii on [0, 2] uniform in r², others on [−2, 2].
    pub fn new(chart: &ChartRef) -> Region {
        let axes = chart
            .coords()
            .iter()
            .map(|c| {
                let (lo, hi) = c.kind.default_range();
                match c.kind {
                    CoordKind::Angle => {
                        Axis { lo, hi, points: DEFAULT_ANGLE_POINTS, spacing: Spacing::Periodic }
                    }
                    CoordKind::Radial => {
                        Axis { lo, hi, points: DEFAULT_POINTS, spacing: Spacing::SquareUniform }
                    }
                    _ => Axis { lo, hi, points: DEFAULT_POINTS, spacing: Spacing::Uniform },
                }
            })
            .collect();
        Region {
            chart: chart.clone(),
            axes,
            constraints: Vec::new(),
            volume: None,
            env: None,
            seed: 42,
            jitter: 0.0,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_bounds(mut self, i: usize, lo: f64, hi: f64) -> Result<Region> {
        let kind = self.chart.kind(i);
        let ok = lo <= hi
            && match kind {
                CoordKind::Angle => true,
                CoordKind::Radial => lo >= 0.0,
                _ => kind.contains(lo) && kind.contains(hi),
            };
        if !ok {
            return Err(Error::BadRegion(format!("bounds [{lo}, {hi}] for {}", self.chart.name(i))));
        }
        let ax = &mut self.axes[i];
        ax.lo = lo;
        ax.hi = hi;
        if kind == CoordKind::Angle && (hi - lo - 2.0 * PI).abs() > 1e-12 {
            ax.spacing = Spacing::Uniform;
        }
        Ok(self)
    }

    pub fn with_named_bounds(self, name: &str, lo: f64, hi: f64) -> Result<Region> {
        let i = self.chart.index(name)?;
        self.with_bounds(i, lo, hi)
    }

    pub fn with_points(mut self, i: usize, points: usize) -> Region {
        self.axes[i].points = points.max(1);
        self
    }

    /// Set the resolution of every non-angle axis.
    pub fn with_resolution(mut self, points: usize) -> Region {
        for ax in &mut self.axes {
            if ax.spacing != Spacing::Periodic {
                ax.points = points.max(1);
            }
        }
        self
    }

    pub fn with_spacing(mut self, i: usize, s: Spacing) -> Region {
        self.axes[i].spacing = s;
        self
    }

    /// Add the constraint `e ≥ 0`.
    pub fn with_constraint(mut self, e: ScalarExpr) -> Region {
        self.constraints.push(e);
        self
    }

    pub fn with_volume(mut self, vol: DifferentialForm) -> Region {
        self.volume = Some(vol);
        self
    }

    pub fn with_env(mut self, env: Arc<dyn Env + Send + Sync>) -> Region {
        self.env = Some(env);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Region {
        self.seed = seed;
        self
    }

    /// Jitter amplitude as a fraction of the cell width (0 by default).
    pub fn with_jitter(mut self, jitter: f64) -> Region {
        self.jitter = jitter;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Region {
        self.budget = budget.max(1);
        self
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn axis(&self, i: usize) -> &Axis {
        &self.axes[i]
    }

    pub fn constraints(&self) -> &[ScalarExpr] {
        &self.constraints
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn env(&self) -> &dyn Env {
        match &self.env {
            Some(e) => e.as_ref(),
            None => &NoEnv,
        }
    }

    pub fn env_arc(&self) -> Option<Arc<dyn Env + Send + Sync>> {
        self.env.clone()
    }

    /// The declared volume: the override if set, else the chart's.
    pub fn volume(&self) -> DifferentialForm {
        self.volume.clone().unwrap_or_else(|| DifferentialForm::volume(&self.chart))
    }

    pub fn constraint_mask(&self) -> u32 {
        self.constraints.iter().fold(0, |m, c| m | c.dependencies())
    }

    /// Inside the box and all constraints (tolerance 1e-12).
    pub fn contains(&self, p: &[f64]) -> bool {
        if !self.axes.iter().zip(p).all(|(a, &v)| a.contains(v)) {
            return false;
        }
        self.constraints
            .iter()
            .all(|c| c.evaluate_in(p, self.env()).map_or(false, |v| v >= -1e-12))
    }

    /// Resolution per axis after shrinking the active axes to the budget.
    pub fn effective_points(&self, active: u32) -> Vec<usize> {
        let mut pts: Vec<usize> = self
            .axes
            .iter()
            .enumerate()
            .map(|(i, a)| if active & (1 << i) != 0 { a.points } else { 1 })
            .collect();
        loop {
            let total: usize = pts.iter().fold(1usize, |acc, &p| acc.saturating_mul(p));
            if total <= self.budget {
                break;
            }
            let (imax, _) = pts.iter().enumerate().max_by_key(|(_, &p)| p).unwrap();
            if pts[imax] <= 2 {
                break;
            }
            pts[imax] -= 1;
        }
        pts
    }

    /// Axes as sampled for `active` (constraint dependencies included).
    pub fn effective_axes(&self, active: u32) -> Vec<Axis> {
        let active = active | self.constraint_mask();
        let pts = self.effective_points(active);
        self.axes
            .iter()
            .zip(&pts)
            .enumerate()
            .map(|(i, (a, &p))| if active & (1 << i) == 0 || p == a.points { *a } else { Axis { points: p, ..*a } })
            .collect()
    }

    /// Tensor grid over `active` (plus constraint dependencies); other axes
    /// sit at their middle node. Points violating a constraint are dropped.
    pub fn samples(&self, active: u32) -> Vec<Sample> {
        let active = active | self.constraint_mask();
        let pts = self.effective_points(active);
        let axes = self.effective_axes(active);
        let dim = axes.len();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::new();
        let mut idx = alloc::vec![0usize; dim];
        for i in 0..dim {
            if active & (1 << i) == 0 {
                idx[i] = self.axes[i].points / 2;
            }
        }
        loop {
            let point: Vec<f64> = (0..dim)
                .map(|i| {
                    let base = axes[i].value(idx[i]);
                    if self.jitter > 0.0 && active & (1 << i) != 0 && axes[i].points > 1 {
                        let cell = (axes[i].hi - axes[i].lo) / (axes[i].points - 1) as f64;
                        let v = base + self.jitter * cell * (rng.gen::<f64>() - 0.5);
                        v.clamp(axes[i].lo, axes[i].hi)
                    } else {
                        base
                    }
                })
                .collect();
            if self.contains(&point) {
                out.push(Sample { index: idx.clone(), point });
            }
            let mut k = 0;
            loop {
                if k == dim {
                    return out;
                }
                if active & (1 << k) != 0 {
                    idx[k] += 1;
                    if idx[k] < pts[k] {
                        break;
                    }
                    idx[k] = 0;
                }
                k += 1;
            }
        }
    }
}
