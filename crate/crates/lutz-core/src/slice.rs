//! Two-dimensional slices of a construction's certified scalar: the contact
//! ratio, a domain indicator or a profile function, sampled on a plane.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::analysis::{contact_ratio, Region, Spacing};
use crate::chart::CoordKind;
use crate::constructions::{double, giroux, omega_tw, otw, tube, tube_chart, twist};
use crate::error::{Error, Result};
use crate::forms::{ChartRef, DifferentialForm};
use crate::handles::{make_handle, HandleRegion, Membership, DEFAULT_A, DEFAULT_B, DEFAULT_C};
use crate::scalar::{q_to_f64, Env, NoEnv, ScalarExpr};

pub const DEFAULT_SLICE_POINTS: usize = 101;
/// Relative size below which a sample is marked as a locus point.
pub const LOCUS_MARK_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct SliceAxis {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub spacing: Spacing,
}

impl SliceAxis {
    fn value(&self, k: usize, points: usize) -> f64 {
        let t = if points <= 1 { 0.0 } else { k as f64 / (points - 1) as f64 };
        match self.spacing {
            Spacing::SquareUniform => {
                let (a, b) = (self.lo * self.lo, self.hi * self.hi);
                libm::sqrt(a + t * (b - a))
            }
            _ => self.lo + t * (self.hi - self.lo),
        }
    }
}

type Eval = Box<dyn Fn(&[f64]) -> Result<Option<f64>>>;

/// The plotted scalar of a construction. `None` from `eval` means the point
/// lies outside the construction's domain.
pub struct SliceField {
    pub name: String,
    pub quantity: String,
    pub axes: Vec<SliceAxis>,
    /// Coordinates the value does not depend on.
    pub free: u32,
    eval: Eval,
}

impl core::fmt::Debug for SliceField {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SliceField").field("name", &self.name).field("axes", &self.axes).finish()
    }
}

impl SliceField {
    pub fn index(&self, name: &str) -> Result<usize> {
        self.axes
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::BadSlice(format!("no coordinate `{name}` on {}", self.name)))
    }

    pub fn eval(&self, p: &[f64]) -> Result<Option<f64>> {
        (self.eval)(p)
    }
}

fn axes_of(chart: &ChartRef, radial_hi: f64) -> Vec<SliceAxis> {
    chart
        .coords()
        .iter()
        .map(|c| {
            let (lo, hi) = c.kind.default_range();
            let (hi, spacing) = match c.kind {
                CoordKind::Radial => (radial_hi, Spacing::SquareUniform),
                CoordKind::Angle => (hi, Spacing::Periodic),
                _ => (hi, Spacing::Uniform),
            };
            SliceAxis { name: c.name.clone(), lo, hi, spacing }
        })
        .collect()
}

fn ratio_field<E: Env + 'static>(name: &str, alpha: &DifferentialForm, radial_hi: f64, env: E) -> Result<SliceField> {
    let chart = alpha.chart().clone();
    let ratio: ScalarExpr = contact_ratio(alpha, &Region::new(&chart))?;
    let free = !ratio.dependencies() & ((1u32 << chart.dim()) - 1);
    Ok(SliceField {
        name: name.into(),
        quantity: "contact ratio".into(),
        axes: axes_of(&chart, radial_hi),
        free,
        eval: Box::new(move |p| ratio.evaluate_in(p, &env).map(Some)),
    })
}

/// Options that only some constructions read.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceOptions {
    pub fold: usize,
    pub half_dim: usize,
    pub index: usize,
    pub epsilon: f64,
    pub a: f64,
}

impl Default for SliceOptions {
    fn default() -> Self {
        SliceOptions { fold: 1, half_dim: 1, index: 1, epsilon: otw::DEFAULT_EPSILON, a: 2.0 }
    }
}

pub fn slice_field(name: &str, n: usize, opts: &SliceOptions) -> Result<SliceField> {
    crate::constructions::check_dim(n)?;
    let sqrt_pi = libm::sqrt(PI);
    match name {
        "standard-tube" => ratio_field(name, &tube::xi0(&tube_chart(n)), 2.0, NoEnv),
        "lutz-confoliation" | "blob" | "euler-sections" => ratio_field(name, &omega_tw(&tube_chart(n)), sqrt_pi, NoEnv),
        "double" => {
            ratio_field(name, &omega_tw(&tube_chart(n)), double::fold_radius(opts.fold).to_f64(), NoEnv)
        }
        "prelag-blowup" => ratio_field(name, &crate::constructions::prelag::eta0(n), 2.0, NoEnv),
        "giroux-domain" => {
            // Σ sits in the tube as sᵢ = rᵢ² − π, so int Σ is π/2 < rᵢ² < 3π/2.
            let chart = tube_chart(n);
            let det = giroux::printed_det(n);
            let scale = q_to_f64(&crate::scalar::factorial(n));
            let dim = chart.dim();
            let eval: Eval = Box::new(move |p| {
                let mut s = alloc::vec![0.0; 2 * n];
                for i in 0..n {
                    let si = p[crate::constructions::ri(i)] * p[crate::constructions::ri(i)] - PI;
                    if libm::fabs(si) > PI / 2.0 {
                        return Ok(None);
                    }
                    s[2 * i] = si;
                }
                Ok(Some(scale * det.evaluate_in(&s, &NoEnv)?))
            });
            let free = (0..dim).filter(|j| j % 2 == 0).fold(0u32, |m, j| m | (1 << j));
            Ok(SliceField {
                name: name.into(),
                quantity: "contactization volume ratio".into(),
                axes: axes_of(&chart, libm::sqrt(2.0 * PI)),
                free,
                eval,
            })
        }
        "full-twist" => {
            let chart = twist::chart(n);
            let coeff = twist::twist_coefficient(&chart)?;
            let mut axes = axes_of(&chart, 1.0);
            axes.push(SliceAxis { name: "t".into(), lo: 0.0, hi: 1.0, spacing: Spacing::Uniform });
            let dim = chart.dim();
            let free = !coeff.dependencies() & ((1u32 << dim) - 1);
            let a = opts.a;
            let eval: Eval = Box::new(move |p| {
                let env = twist::AngleCurves { t: p[dim], a };
                coeff.evaluate_in(&p[..dim], &env).map(Some)
            });
            Ok(SliceField { name: name.into(), quantity: "twist coefficient".into(), axes, free, eval })
        }
        "otw-disc" => {
            // K_ε(z, Σrᵢ²) over the disc chart.
            let chart = otw::otw_chart(n);
            let radii: Vec<usize> = (0..n).map(|i| 1 + 2 * i).collect();
            let eps = opts.epsilon;
            let free = (0..chart.dim()).filter(|j| j % 2 == 0 && *j != 0).fold(0u32, |m, j| m | (1 << j));
            let eval: Eval = Box::new(move |p| {
                let sum: f64 = radii.iter().map(|&i| p[i] * p[i]).sum();
                Ok(Some(otw::big_k(eps, p[0], sum)))
            });
            let mut axes = axes_of(&chart, sqrt_pi);
            axes[0].lo = -1.0;
            axes[0].hi = 1.0;
            Ok(SliceField { name: name.into(), quantity: "K_eps".into(), axes, free, eval })
        }
        "round-handle" => {
            let h = make_handle(opts.half_dim, opts.index)?;
            let region = HandleRegion::new(&h, DEFAULT_A, DEFAULT_B, DEFAULT_C)?;
            let axes = axes_of(&h.chart, 2.0);
            let free = 1u32 << (h.chart.dim() - 1);
            let eval: Eval = Box::new(move |p| {
                Ok(match region.membership(p)? {
                    Membership::Inside => Some(1.0),
                    Membership::Boundary(_) => Some(0.0),
                    Membership::Outside => None,
                })
            });
            Ok(SliceField { name: name.into(), quantity: "handle membership".into(), axes, free, eval })
        }
        other => Err(Error::BadSlice(format!("unknown construction `{other}`"))),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SliceSample {
    pub x: f64,
    pub y: f64,
    pub value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Slice {
    pub x_axis: SliceAxis,
    pub y_axis: SliceAxis,
    pub points: usize,
    /// Row-major, y outer.
    pub samples: Vec<SliceSample>,
    pub locus: Vec<(f64, f64)>,
    pub min: Option<f64>,
    pub max: Option<f64>,
}

/// Samples `field` on the plane of `axes` with the other coordinates set by
/// `fixed`. Unfixed coordinates must be ones the value ignores.
pub fn sample_slice(field: &SliceField, fixed: &[(usize, f64)], axes: (usize, usize), points: usize) -> Result<Slice> {
    let dim = field.axes.len();
    if axes.0 == axes.1 || axes.0 >= dim || axes.1 >= dim {
        return Err(Error::BadSlice("two distinct plot axes are required".into()));
    }
    if points < 2 {
        return Err(Error::BadSlice("at least two points per axis".into()));
    }
    let mut base = alloc::vec![f64::NAN; dim];
    for &(i, v) in fixed {
        if i == axes.0 || i == axes.1 {
            return Err(Error::BadSlice(format!("`{}` is both fixed and an axis", field.axes[i].name)));
        }
        if !v.is_finite() {
            return Err(Error::BadSlice(format!("non-finite value for `{}`", field.axes[i].name)));
        }
        base[i] = v;
    }
    for (i, b) in base.iter_mut().enumerate() {
        if i == axes.0 || i == axes.1 || !b.is_nan() {
            continue;
        }
        if field.free & (1 << i) == 0 {
            return Err(Error::BadSlice(format!("coordinate `{}` must be fixed", field.axes[i].name)));
        }
        *b = field.axes[i].lo;
    }
    let (xa, ya) = (field.axes[axes.0].clone(), field.axes[axes.1].clone());
    let mut samples = Vec::with_capacity(points * points);
    let (mut min, mut max) = (None::<f64>, None::<f64>);
    for j in 0..points {
        for i in 0..points {
            let mut p = base.clone();
            p[axes.0] = xa.value(i, points);
            p[axes.1] = ya.value(j, points);
            let value = field.eval(&p)?;
            if let Some(v) = value {
                min = Some(min.map_or(v, |m| m.min(v)));
                max = Some(max.map_or(v, |m| m.max(v)));
            }
            samples.push(SliceSample { x: p[axes.0], y: p[axes.1], value });
        }
    }
    let scale = min.zip(max).map_or(1.0, |(a, b)| libm::fabs(a).max(libm::fabs(b)).max(1.0));
    let locus = samples
        .iter()
        .filter(|s| s.value.is_some_and(|v| libm::fabs(v) <= LOCUS_MARK_TOL * scale))
        .map(|s| (s.x, s.y))
        .collect();
    Ok(Slice { x_axis: xa, y_axis: ya, points, samples, locus, min, max })
}

/// Parses `name=value` pairs against `field`; values follow the slice-value
/// grammar (numbers, `pi` multiples, `sqrt(..)`).
pub fn parse_fixed(field: &SliceField, spec: &str) -> Result<Vec<(usize, f64)>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::BadSlice(format!("expected name=value, got `{part}`")))?;
        let i = field.index(k.trim())?;
        if out.iter().any(|(j, _)| *j == i) {
            return Err(Error::BadSlice(format!("`{}` fixed twice", k.trim())));
        }
        out.push((i, parse_value(v)?));
    }
    Ok(out)
}

/// value := term (('+' | '-') term)*; term := factor (('*' | '/') factor)*;
/// factor := number | 'pi' | 'sqrt(' value ')' | '(' value ')' | '-' factor.
pub fn parse_value(s: &str) -> Result<f64> {
    let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { t: &toks, i: 0, src: s };
    let v = p.sum()?;
    if p.i != toks.len() {
        return Err(p.err());
    }
    Ok(v)
}

struct Parser<'a> {
    t: &'a [char],
    i: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self) -> Error {
        Error::BadSlice(format!("cannot parse value `{}`", self.src))
    }

    fn peek(&self) -> Option<char> {
        self.t.get(self.i).copied()
    }

    fn eat(&mut self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        if self.t[self.i..].starts_with(&w) {
            self.i += w.len();
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<f64> {
        let mut v = self.product()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.i += 1;
                    v += self.product()?;
                }
                '-' => {
                    self.i += 1;
                    v -= self.product()?;
                }
                _ => break,
            }
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<f64> {
        let mut v = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.i += 1;
                    v *= self.factor()?;
                }
                '/' => {
                    self.i += 1;
                    v /= self.factor()?;
                }
                _ => break,
            }
        }
        Ok(v)
    }

    fn factor(&mut self) -> Result<f64> {
        if self.eat("-") {
            return Ok(-self.factor()?);
        }
        if self.eat("pi") {
            return Ok(PI);
        }
        if self.eat("sqrt(") {
            let v = self.sum()?;
            if !self.eat(")") || v < 0.0 {
                return Err(self.err());
            }
            return Ok(libm::sqrt(v));
        }
        if self.eat("(") {
            let v = self.sum()?;
            if !self.eat(")") {
                return Err(self.err());
            }
            return Ok(v);
        }
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.' || c == 'e') {
            self.i += 1;
        }
        let lit: String = self.t[start..self.i].iter().collect();
        lit.parse::<f64>().map_err(|_| self.err())
    }
}

impl Slice {
    pub fn is_empty(&self) -> bool {
        self.samples.iter().all(|s| s.value.is_none())
    }
}
