//! Symplectic round handles: ω₀ on ℝ^{2m+1} × S¹, the Liouville fields X_k,
//! the cut-off region {f_k ≥ −1, g_k ≤ c}, and the contact forms induced on
//! the attaching and belt charts.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use serde::Serialize;

use crate::analysis::{char_foliation, classify, dividing_set, Class, Level, Region};
use crate::chart::{Chart, CoordKind};
use crate::error::{Error, Result};
use crate::forms::{ChartRef, DifferentialForm, VectorField};
use crate::report::{Check, ConstructionReport, Params, Status};
use crate::scalar::{factorial, q, q_sign, qr, NoEnv, ScalarExpr, Value};

pub const MEMBERSHIP_TOL: f64 = 1e-9;
pub const DEFAULT_A: f64 = 2.0;
pub const DEFAULT_B: f64 = 1.0;
pub const DEFAULT_C: f64 = 1.0;

/// Half-dimension m, index k, chart (p₁…p_m, q₁…q_m, z, φ).
#[derive(Clone, Debug)]
pub struct HandleSpace {
    pub m: usize,
    pub k: usize,
    pub chart: ChartRef,
    pub omega0: DifferentialForm,
    pub liouville: VectorField,
}

pub fn handle_chart(m: usize) -> ChartRef {
    let mut names: Vec<(String, CoordKind)> = (1..=m).map(|i| (format!("p{i}"), CoordKind::Linear)).collect();
    names.extend((1..=m).map(|i| (format!("q{i}"), CoordKind::Linear)));
    names.push(("z".into(), CoordKind::Linear));
    names.push(("phi".into(), CoordKind::Angle));
    Arc::new(Chart::new(names.iter().map(|(s, k)| (s.as_str(), *k)).collect()).expect("distinct names"))
}

pub fn make_handle(m: usize, k: usize) -> Result<HandleSpace> {
    if m == 0 || m > 6 || k == 0 || k > m {
        return Err(Error::BadIndex(format!("need 1 <= k <= m <= 6, got m = {m}, k = {k}")));
    }
    let chart = handle_chart(m);
    let (z, phi) = (2 * m, 2 * m + 1);
    let mut terms: Vec<(Vec<usize>, ScalarExpr)> = (0..m).map(|i| (alloc::vec![i, m + i], ScalarExpr::one())).collect();
    terms.push((alloc::vec![z, phi], ScalarExpr::one()));
    let omega0 = DifferentialForm::from_terms(&chart, 2, terms)?;
    let half = ScalarExpr::constant(qr(1, 2));
    let mut comps = Vec::new();
    for i in 0..m {
        let (p, qq) = (ScalarExpr::coord(i), ScalarExpr::coord(m + i));
        if i < k {
            comps.push((i, p.scale(&q(2))));
            comps.push((m + i, -qq));
        } else {
            comps.push((i, &half * &p));
            comps.push((m + i, &half * &qq));
        }
    }
    comps.push((z, ScalarExpr::coord(z)));
    let liouville = VectorField::new(&chart, comps)?;
    Ok(HandleSpace { m, k, chart, omega0, liouville })
}

impl HandleSpace {
    /// λ = X_k⌟ω₀.
    pub fn lambda(&self) -> Result<DifferentialForm> {
        self.omega0.interior(&self.liouville)
    }

    /// Σ_{i≤k}(2pᵢdqᵢ + qᵢdpᵢ) + ½Σ_{i>k}(pᵢdqᵢ − qᵢdpᵢ) + z dφ.
    pub fn printed_lambda(&self) -> Result<DifferentialForm> {
        let m = self.m;
        let half = qr(1, 2);
        let mut c = Vec::new();
        for i in 0..m {
            let (p, qq) = (ScalarExpr::coord(i), ScalarExpr::coord(m + i));
            if i < self.k {
                c.push((m + i, p.scale(&q(2))));
                c.push((i, qq));
            } else {
                c.push((m + i, p.scale(&half)));
                c.push((i, qq.scale(&-half.clone())));
            }
        }
        c.push((2 * m + 1, ScalarExpr::coord(2 * m)));
        DifferentialForm::one_form(&self.chart, c)
    }

    fn idx(&self, name: &str) -> usize {
        self.chart.index(name).expect("handle coordinate")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Face {
    /// f_k = −1
    WMinus,
    /// g_k = c
    Vc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Inside,
    Outside,
    Boundary(Face),
}

/// {f_k ≥ −1, g_k ≤ c}; both faces closed.
#[derive(Clone, Debug)]
pub struct HandleRegion {
    pub k: usize,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub f: ScalarExpr,
    pub g: ScalarExpr,
}

fn dec(x: f64) -> Q64 {
    Q64::from_float(x).unwrap_or_default()
}

type Q64 = crate::scalar::Q;

impl HandleRegion {
    pub fn new(h: &HandleSpace, a: f64, b: f64, c: f64) -> Result<HandleRegion> {
        if !(a > 0.0 && b > 0.0 && c > 0.0) {
            return Err(Error::BadRegion(format!("A, B, c must be positive: {a}, {b}, {c}")));
        }
        let m = h.m;
        let sq = |i: usize| ScalarExpr::coord(i).pow(2);
        let mut f = sq(2 * m).scale(&qr(1, 2));
        let mut neg = ScalarExpr::zero();
        let mut pos = sq(2 * m);
        for i in 0..m {
            if i < h.k {
                f = &(&f - &sq(m + i).scale(&qr(1, 2))) + &sq(i);
                neg = &neg + &sq(m + i);
                pos = &pos + &sq(i);
            } else {
                f = &f + &(&sq(m + i) + &sq(i)).scale(&qr(1, 4));
                pos = &(&pos + &sq(m + i)) + &sq(i);
            }
        }
        let g = &pos.scale(&dec(b)) - &neg.scale(&dec(a));
        Ok(HandleRegion { k: h.k, a, b, c, f, g })
    }

    pub fn membership(&self, point: &[f64]) -> Result<Membership> {
        let f = self.f.evaluate_in(point, &NoEnv)?;
        let g = self.g.evaluate_in(point, &NoEnv)?;
        let in_f = f >= -1.0 - MEMBERSHIP_TOL;
        let in_g = g <= self.c + MEMBERSHIP_TOL;
        Ok(if !(in_f && in_g) {
            Membership::Outside
        } else if libm::fabs(f + 1.0) <= MEMBERSHIP_TOL {
            Membership::Boundary(Face::WMinus)
        } else if libm::fabs(g - self.c) <= MEMBERSHIP_TOL {
            Membership::Boundary(Face::Vc)
        } else {
            Membership::Inside
        })
    }

    /// Region constraints f + 1 ≥ 0 and c − g ≥ 0 on a chart obtained by
    /// fixing the listed coordinates.
    fn constraints_on(&self, fixed: &[(usize, Value)], map: &[Option<usize>]) -> Result<Vec<ScalarExpr>> {
        let mut out = Vec::new();
        for e in [&self.f + &ScalarExpr::one(), &ScalarExpr::constant(dec(self.c)) - &self.g] {
            let mut e = e;
            for (i, v) in fixed {
                e = e.substitute(*i, v)?;
            }
            out.push(e.reindex(map)?);
        }
        Ok(out)
    }
}

/// A coordinate level of the handle chart, given by name.
#[derive(Clone, Debug, PartialEq)]
pub struct HandleLevel {
    pub name: String,
    pub sign: i64,
}

impl HandleLevel {
    pub fn new(name: &str, sign: i64) -> HandleLevel {
        HandleLevel { name: name.to_string(), sign }
    }

    pub fn label(&self) -> String {
        format!("{}={}1", self.name, if self.sign > 0 { "+" } else { "-" })
    }
}

fn unit(sign: i64) -> Value {
    Value::int(sign)
}

fn level_of(chart: &ChartRef, l: &HandleLevel) -> Result<Level> {
    Ok(Level::new(chart.index(&l.name)?, unit(l.sign)))
}

/// Checks that X is transverse to the level and returns (X⌟ω₀)|_level.
pub fn induced_form(h: &HandleSpace, level: &HandleLevel) -> Result<DifferentialForm> {
    let j = h.idx(&level.name);
    let normal = h.liouville.component(j).substitute(j, &unit(level.sign))?;
    let transverse = match normal.as_constant() {
        Some(c) => q_sign(&c) != 0,
        None => false,
    };
    if !transverse {
        return Err(Error::NotTransverse(format!("X_k is not transverse to {}", level.label())));
    }
    h.lambda()?.restrict(&[(j, unit(level.sign))])
}

/// Orientation of a level induced by X: sign(X_j)·(∂_j⌟ω₀^{m+1})|_level.
pub fn level_volume(h: &HandleSpace, level: &HandleLevel) -> Result<DifferentialForm> {
    let j = h.idx(&level.name);
    let normal = h.liouville.component(j).substitute(j, &unit(level.sign))?;
    let s = normal.as_constant().map(|c| q_sign(&c)).unwrap_or(0);
    if s == 0 {
        return Err(Error::NotTransverse(level.label()));
    }
    let top = h.omega0.power(h.m + 1)?;
    let vol = top.interior(&VectorField::basis(&h.chart, j))?.restrict(&[(j, unit(level.sign))])?;
    Ok(vol.scale(&ScalarExpr::int(s as i64)))
}

/// Sub-chart index map after fixing coordinate j.
fn drop_map(dim: usize, fixed: &[usize]) -> Vec<Option<usize>> {
    let mut map = alloc::vec![None; dim];
    let mut k = 0;
    for (i, slot) in map.iter_mut().enumerate() {
        if !fixed.contains(&i) {
            *slot = Some(k);
            k += 1;
        }
    }
    map
}

/// Slice of the handle region on a level, box [−1.5, 1.5] on the free
/// linear coordinates.
fn slice_region(h: &HandleSpace, hr: &HandleRegion, level: &HandleLevel, points: usize) -> Result<Region> {
    let j = h.idx(&level.name);
    let alpha = induced_form(h, level)?;
    let chart = alpha.chart().clone();
    let mut reg = Region::new(&chart).with_resolution(points).with_volume(level_volume(h, level)?);
    for i in 0..chart.dim() {
        if chart.kind(i) == CoordKind::Linear {
            reg = reg.with_bounds(i, -1.5, 1.5)?;
        }
    }
    for e in hr.constraints_on(&[(j, unit(level.sign))], &drop_map(h.chart.dim(), &[j]))? {
        reg = reg.with_constraint(e);
    }
    Ok(reg)
}

/// The printed induced forms for index 1.
pub fn printed_induced(h: &HandleSpace, level: &HandleLevel) -> Result<Option<DifferentialForm>> {
    let m = h.m;
    let half = qr(1, 2);
    let s = level.sign;
    let rest = |skip: Option<usize>| -> Vec<(usize, ScalarExpr)> {
        let mut c = Vec::new();
        for i in (1..m).filter(|&i| Some(i) != skip) {
            c.push((m + i, ScalarExpr::coord(i).scale(&half)));
            c.push((i, ScalarExpr::coord(m + i).scale(&-half.clone())));
        }
        c
    };
    let zdphi = (2 * m + 1, ScalarExpr::coord(2 * m));
    let p1q1 = [(0usize, ScalarExpr::coord(m)), (m, ScalarExpr::coord(0).scale(&q(2)))];
    let name = level.name.as_str();
    let mut c = Vec::new();
    if name == "q1" {
        c.push((0, ScalarExpr::int(s)));
        c.push(zdphi);
        c.extend(rest(None));
    } else if name == "p1" {
        c.push((m, ScalarExpr::int(2 * s)));
        c.extend(rest(None));
        c.push(zdphi);
    } else if name == "z" {
        c.extend(p1q1.iter().cloned());
        c.extend(rest(None));
        c.push((2 * m + 1, ScalarExpr::int(s)));
    } else if let Some(i) = name.strip_prefix('p').and_then(|t| t.parse::<usize>().ok()) {
        c.extend(p1q1.iter().cloned());
        c.push((m + i - 1, ScalarExpr::constant(qr(s, 2))));
        c.extend(rest(Some(i - 1)));
        c.push(zdphi);
    } else if let Some(i) = name.strip_prefix('q').and_then(|t| t.parse::<usize>().ok()) {
        c.extend(p1q1.iter().cloned());
        c.push((i - 1, ScalarExpr::constant(qr(-s, 2))));
        c.extend(rest(Some(i - 1)));
        c.push(zdphi);
    } else {
        return Ok(None);
    }
    let j = h.idx(name);
    // merge duplicate slots before building
    let mut merged: Vec<(usize, ScalarExpr)> = Vec::new();
    for (i, e) in c {
        match merged.iter_mut().find(|(k, _)| *k == i) {
            Some((_, acc)) => *acc = &*acc + &e,
            None => merged.push((i, e)),
        }
    }
    Ok(Some(DifferentialForm::one_form(&h.chart, merged)?.restrict(&[(j, unit(s))])?))
}

/// dx wedge in the listed order on `chart`.
fn dx_wedge(chart: &ChartRef, names: &[String]) -> Result<DifferentialForm> {
    let mut out = DifferentialForm::scalar(chart, ScalarExpr::one());
    for n in names {
        out = out.wedge(&DifferentialForm::dx(chart, chart.index(n)?))?;
    }
    Ok(out)
}

/// ±(⋀_{i≥2} dpᵢ∧dqᵢ)∧dz∧dφ on a level chart.
fn printed_omega(chart: &ChartRef, m: usize, sign: i64) -> Result<DifferentialForm> {
    let mut names = Vec::new();
    for i in 2..=m {
        names.push(format!("p{i}"));
        names.push(format!("q{i}"));
    }
    names.push("z".into());
    names.push("phi".into());
    Ok(dx_wedge(chart, &names)?.scale(&ScalarExpr::int(sign)))
}

/// z∂z + ½Σ_{i≥2}(pᵢ∂pᵢ + qᵢ∂qᵢ), scaled by `z_coef` on ∂z and `r_coef` on the rest.
fn radial_field(chart: &ChartRef, m: usize, z_coef: ScalarExpr, r_coef: ScalarExpr) -> Result<VectorField> {
    let mut c = alloc::vec![(chart.index("z")?, &z_coef * &ScalarExpr::coord(chart.index("z")?))];
    for i in 2..=m {
        for n in [format!("p{i}"), format!("q{i}")] {
            let k = chart.index(&n)?;
            c.push((k, &(&r_coef * &ScalarExpr::coord(k)) * &ScalarExpr::constant(qr(1, 2))));
        }
    }
    VectorField::new(chart, c)
}

/// Constant field from (name, coefficient) pairs.
fn const_field(chart: &ChartRef, parts: &[(&str, Q64)]) -> Result<VectorField> {
    let mut c = Vec::new();
    for (n, v) in parts {
        c.push((chart.index(n)?, ScalarExpr::constant(v.clone())));
    }
    VectorField::new(chart, c)
}

/// V = λ·W with λ a nonzero constant; returns λ.
pub fn proportional(v: &VectorField, w: &VectorField) -> Result<Option<Q64>> {
    let (j, wj) = match w.components().iter().find_map(|(j, e)| e.as_constant().map(|c| (*j, c))) {
        Some(x) => x,
        None => return Ok(None),
    };
    let lam = match v.component(j).as_constant() {
        Some(c) => c / wj,
        None => return Ok(None),
    };
    if q_sign(&lam) == 0 {
        return Ok(None);
    }
    let ok = v.sub(&w.scale(&ScalarExpr::constant(lam.clone())))?.is_symbolic_zero();
    Ok(ok.then_some(lam))
}

fn side_levels(m: usize) -> Vec<HandleLevel> {
    let mut out = Vec::new();
    for i in 2..=m {
        for s in [1, -1] {
            out.push(HandleLevel::new(&format!("p{i}"), s));
            out.push(HandleLevel::new(&format!("q{i}"), s));
        }
    }
    for s in [1, -1] {
        out.push(HandleLevel::new("z", s));
    }
    out
}

/// Printed V for the attaching side charts of A₊ on the +1 level; with
/// `adapt` the sign of the level is carried into the transverse term.
fn printed_attaching_v(chart: &ChartRef, l: &HandleLevel, adapt: bool) -> Result<VectorField> {
    let half = qr(1, 2);
    let s = if adapt { l.sign } else { 1 };
    if l.name == "z" {
        return const_field(chart, &[("phi", q(-s)), ("p1", q(1))]);
    }
    let i = &l.name[1..];
    if l.name.starts_with('p') {
        const_field(chart, &[(&format!("q{i}"), q(-s)), ("p1", half)])
    } else {
        const_field(chart, &[(&format!("p{i}"), q(s)), ("p1", half)])
    }
}

fn text_q(v: &Q64) -> String {
    format!("{v}")
}

pub fn verify_round_handle(m: usize, k: usize, grid: usize) -> Result<ConstructionReport> {
    let h = make_handle(m, k)?;
    let mut params = Params::new(m, grid);
    params.k = Some(k);
    params.a = Some(DEFAULT_A);
    params.b = Some(DEFAULT_B);
    params.c = Some(DEFAULT_C);
    let mut rep = ConstructionReport::new("round-handle", params);
    rep.push(Check::symbolic("omega0-closed", h.omega0.ext_d().is_symbolic_zero()));
    let lam = h.lambda()?;
    rep.push(Check::symbolic("liouville", lam.ext_d().same_as(&h.omega0)? && h.omega0.lie_derivative(&h.liouville)?.same_as(&h.omega0)?));
    rep.push(Check::symbolic("lambda-printed", lam.same_as(&h.printed_lambda()?)?).with("lambda", lam.to_text(&Default::default())));

    let hr = HandleRegion::new(&h, DEFAULT_A, DEFAULT_B, DEFAULT_C)?;
    let dim = h.chart.dim();
    let mut counts = [0usize; 3];
    let lattice = [-1.0, 0.0, 1.0];
    let total = 3usize.pow((dim - 1) as u32);
    for idx in 0..total {
        let mut rest = idx;
        let mut p = alloc::vec![0.0; dim];
        for x in p.iter_mut().take(dim - 1) {
            *x = lattice[rest % 3];
            rest /= 3;
        }
        match hr.membership(&p)? {
            Membership::Inside => counts[0] += 1,
            Membership::Boundary(_) => counts[1] += 1,
            Membership::Outside => counts[2] += 1,
        }
    }
    rep.push(
        Check::grid("region-nonempty", counts[0] > 0)
            .with("inside", counts[0])
            .with("boundary", counts[1])
            .with("outside", counts[2]),
    );
    let origin = alloc::vec![0.0; dim];
    let mut w_pt = origin.clone();
    w_pt[m] = libm::sqrt(2.0);
    // attaching samples: q₁ solved from f₁ = −1 at scattered p₁, z
    let mut attach_ok = true;
    for (p1, zz) in [(0.0, 0.0), (0.3, -0.2), (-0.25, 0.4)] {
        let mut pt = origin.clone();
        pt[0] = p1;
        pt[2 * m] = zz;
        pt[m] = libm::sqrt(2.0 * (1.0 + p1 * p1 + 0.5 * zz * zz));
        attach_ok &= hr.membership(&pt)? == Membership::Boundary(Face::WMinus);
    }
    rep.push(
        Check::grid(
            "membership-examples",
            hr.membership(&origin)? == Membership::Inside
                && (k > 1 || hr.membership(&w_pt)? == Membership::Boundary(Face::WMinus))
                && (k > 1 || attach_ok),
        )
        .with("origin", format!("{:?}", hr.membership(&origin)?))
        .with("q1_sqrt2", format!("{:?}", hr.membership(&w_pt)?)),
    );
    if k != 1 {
        rep.note(format!("index {k}: only the Liouville and membership checks apply"));
        return Ok(rep);
    }

    // Induced forms on the attaching and belt charts.
    let mut charts = alloc::vec![HandleLevel::new("q1", 1), HandleLevel::new("q1", -1), HandleLevel::new("p1", 1), HandleLevel::new("p1", -1)];
    for i in 2..=m {
        for s in [1, -1] {
            charts.push(HandleLevel::new(&format!("p{i}"), s));
            charts.push(HandleLevel::new(&format!("q{i}"), s));
        }
    }
    charts.push(HandleLevel::new("z", 1));
    charts.push(HandleLevel::new("z", -1));
    let mut form_fail = Vec::new();
    let mut contact_fail = Vec::new();
    let mut min_ratio = f64::INFINITY;
    for l in &charts {
        let a = induced_form(&h, l)?;
        if let Some(p) = printed_induced(&h, l)? {
            if !a.same_as(&p)? {
                form_fail.push(l.label());
            }
        }
        let reg = slice_region(&h, &hr, l, 5)?;
        let cls = classify(&a, &reg)?;
        min_ratio = min_ratio.min(cls.certificate.min);
        if cls.class != Class::Contact {
            contact_fail.push(l.label());
        }
    }
    rep.push(Check::symbolic("induced-forms", form_fail.is_empty()).with("charts", charts.len()).with("mismatched", form_fail));
    rep.push(Check::grid("induced-contact", contact_fail.is_empty()).with("min_ratio", min_ratio).with("not_contact", contact_fail));

    // Attaching side: characteristic foliation on charts of A₊ = {q₁ = 1}.
    let a_plus = induced_form(&h, &HandleLevel::new("q1", 1))?;
    let ac = a_plus.chart().clone();
    let mf = ScalarExpr::constant(factorial(m - 1));
    let mut cap_ok = true;
    for s in [1i64, -1] {
        let lv = level_of(&ac, &HandleLevel::new("p1", s))?;
        let sub = a_plus.restrict(&[(lv.coord, lv.value.clone())])?.chart().clone();
        let v = char_foliation(&a_plus, &lv, &printed_omega(&sub, m, s)?)?;
        let expect = radial_field(&sub, m, ScalarExpr::int(s), ScalarExpr::int(s))?.scale(&mf);
        cap_ok &= v.sub(&expect)?.is_symbolic_zero();
    }
    rep.push(Check::symbolic("attaching-cap-fields", cap_ok).with("factor", text_q(&factorial(m - 1))));
    let mut lambdas = Vec::new();
    let mut side_ok = true;
    let mut literal_minus = true;
    for l in side_levels(m) {
        let lv = level_of(&ac, &l)?;
        let sub = a_plus.restrict(&[(lv.coord, lv.value.clone())])?.chart().clone();
        let omega = DifferentialForm::volume(&sub);
        let v = char_foliation(&a_plus, &lv, &omega)?;
        if l.sign < 0 {
            literal_minus &= proportional(&v, &printed_attaching_v(&sub, &l, false)?)?.is_some();
        }
        match proportional(&v, &printed_attaching_v(&sub, &l, true)?)? {
            Some(lam) => lambdas.push(format!("{}: {}", l.label(), text_q(&lam))),
            None => {
                side_ok = false;
                lambdas.push(format!("{}: not proportional", l.label()));
            }
        }
    }
    if !literal_minus {
        rep.note("attaching side charts at level -1: the field is the printed one with the transverse term's sign flipped");
    }
    rep.push(
        Check::symbolic("attaching-side-fields", side_ok)
            .with("lambda", lambdas)
            .with("printed_literal_at_minus_levels", literal_minus),
    );

    // Dividing set {p₁ = 0}: Y = p₁∂p₁ + ½Σ(p∂p + q∂q) + z∂z is a contact
    // field for α on A₊ with α(Y) = p₁.
    let mut yc = alloc::vec![(ac.index("p1")?, ScalarExpr::coord(ac.index("p1")?))];
    for i in 2..=m {
        for n in [format!("p{i}"), format!("q{i}")] {
            let j = ac.index(&n)?;
            yc.push((j, ScalarExpr::coord(j).scale(&qr(1, 2))));
        }
    }
    yc.push((ac.index("z")?, ScalarExpr::coord(ac.index("z")?)));
    let y = VectorField::new(&ac, yc)?;
    let contact_field = a_plus.lie_derivative(&y)?.same_as(&a_plus)?;
    let mut div_ok = contact_field;
    let mut div_zeros = 0usize;
    for l in side_levels(m) {
        let lv = level_of(&ac, &l)?;
        let sub = a_plus.restrict(&[(lv.coord, lv.value.clone())])?.chart().clone();
        let mut reg = Region::new(&sub).with_resolution(grid.min(9) | 1);
        for i in 0..sub.dim() {
            if sub.kind(i) == CoordKind::Linear {
                reg = reg.with_bounds(i, -1.0, 1.0)?;
            }
        }
        let d = dividing_set(&lv, &a_plus, &y, &reg)?;
        let p1 = sub.index("p1")?;
        div_ok &= d.positive > 0 && d.negative > 0 && !d.zeros.is_empty();
        div_ok &= d.zeros.iter().all(|s| libm::fabs(s.point[p1]) <= 1e-12);
        div_zeros += d.zeros.len();
    }
    rep.push(
        Check::grid("attaching-dividing-set", div_ok)
            .with("contact_field", contact_field)
            .with("zeros", div_zeros)
            .with("set", "p1=0"),
    );

    // Belt core BC = {q₁ = 0} in B¹± = {p₁ = ±1}.
    let mut belt_ok = true;
    let mut matches_printed = Vec::new();
    for s in [1i64, -1] {
        let b = induced_form(&h, &HandleLevel::new("p1", s))?;
        let bc = b.chart().clone();
        let lv = Level::new(bc.index("q1")?, Value::int(0));
        let sub = b.restrict(&[(lv.coord, lv.value.clone())])?.chart().clone();
        let v = char_foliation(&b, &lv, &printed_omega(&sub, m, -s)?)?;
        let derived = radial_field(&sub, m, ScalarExpr::int(-s), ScalarExpr::int(-s))?.scale(&mf);
        belt_ok &= v.sub(&derived)?.is_symbolic_zero();
        let printed = radial_field(&sub, m, ScalarExpr::one(), ScalarExpr::int(-s))?;
        matches_printed.push(proportional(&v, &printed)?.is_some());
    }
    rep.push(
        Check::symbolic("belt-core-fields", belt_ok)
            .with("derived", "-+(m-1)! (z d/dz + 1/2 sum(p d/dp + q d/dq))")
            .with("printed_proportional", matches_printed.iter().map(|b| b.to_string()).collect::<Vec<_>>()),
    );
    if matches_printed.iter().any(|b| !b) {
        rep.note("belt core: the computed field carries the -+ sign on the z d/dz term as well; the printed field does not");
    }
    let mut belt_side = Vec::new();
    let mut belt_side_ok = true;
    for l in side_levels(m) {
        let b = induced_form(&h, &l)?;
        let bc = b.chart().clone();
        let lv = Level::new(bc.index("q1")?, Value::int(0));
        let sub = b.restrict(&[(lv.coord, lv.value.clone())])?.chart().clone();
        let v = char_foliation(&b, &lv, &DifferentialForm::volume(&sub))?;
        let dp1 = const_field(&sub, &[("p1", q(1))])?;
        match proportional(&v, &dp1)? {
            Some(lam) => belt_side.push(format!("{}: {}", l.label(), text_q(&lam))),
            None => {
                belt_side_ok = false;
                belt_side.push(format!("{}: not along d/dp1", l.label()));
            }
        }
    }
    rep.push(
        Check::new("belt-side-fields", if belt_side_ok { Status::SymbolicPass } else { Status::Fail })
            .with("lambda", belt_side)
            .with("pattern", "S^(2n-2) x S^1"),
    );
    Ok(rep)
}
