//! The double D(U) of U(√((k+1)π/2)), its collar, the model kπ-tube and the
//! wide Giroux domain as region bookkeeping.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{check_dim, cos_product, omega_tw, ri, thi, tube_chart};
use crate::chart::{Chart, CoordKind};
use crate::error::{Error, Result};
use crate::forms::{ChartRef, DifferentialForm};
use crate::report::{Check, ConstructionReport, Params};
use crate::scalar::{qr, ScalarExpr, Value};

/// Radius of the fold-k tube as a multiple of √π: √((k+1)/2).
pub fn fold_radius(k: usize) -> Value {
    Value::SqrtPiMultiple(qr(k as i64 + 1, 2))
}

/// ω_tw restricted to the face {rᵢ = √((k+1)π/2)}.
pub fn face_form(n: usize, k: usize, i: usize) -> Result<DifferentialForm> {
    omega_tw(&tube_chart(n)).restrict(&[(ri(i), fold_radius(k))])
}

/// Expected face form: cos((k+1)π/2)∏ⱼ≠ᵢcos rⱼ² dφ + sin((k+1)π/2)dθᵢ +
/// Σⱼ≠ᵢ sin rⱼ² dθⱼ, on the face chart. For k = 1 this is the printed
/// −∏ⱼ≠ᵢcos rⱼ² dφ + Σⱼ≠ᵢ sin rⱼ² dθⱼ.
pub fn printed_face_form(n: usize, k: usize, i: usize) -> Result<DifferentialForm> {
    let full = tube_chart(n);
    let (c, s) = [(1, 0), (0, 1), (-1, 0), (0, -1)][(k + 1) % 4];
    let mut terms = alloc::vec![
        (0usize, cos_product((0..n).filter(|&j| j != i)).scale(&qr(c, 1))),
        (thi(i), ScalarExpr::int(s)),
    ];
    for j in (0..n).filter(|&j| j != i) {
        terms.push((thi(j), ScalarExpr::sin_sq(ri(j))));
    }
    let f = DifferentialForm::one_form(&full, terms)?;
    // Restricting a form without rᵢ only moves it to the face chart.
    f.restrict(&[(ri(i), Value::int(0))])
}

/// Collar chart: the tube chart with rᵢ replaced by the angle t.
pub fn collar_chart(n: usize, i: usize) -> Result<ChartRef> {
    let base = Chart::cylindrical(n);
    let mut names: Vec<(String, CoordKind)> =
        base.coords().iter().map(|c| (c.name.clone(), c.kind)).collect();
    names[ri(i)] = ("t".to_string(), CoordKind::Angle);
    let weights: Vec<usize> = (0..n).filter(|&j| j != i).map(ri).collect();
    let chart = Chart::new(names.iter().map(|(s, k)| (s.as_str(), *k)).collect())?.with_weights(weights);
    Ok(Arc::new(chart))
}

/// cos t ∏ⱼ≠ᵢcos rⱼ² dφ + sin t dθᵢ + Σⱼ≠ᵢ sin rⱼ² dθⱼ.
pub fn collar_form(n: usize, i: usize) -> Result<DifferentialForm> {
    let chart = collar_chart(n, i)?;
    let t = ri(i);
    let mut c = alloc::vec![
        (0usize, &ScalarExpr::cos(t) * &cos_product((0..n).filter(|&j| j != i))),
        (thi(i), ScalarExpr::sin(t)),
    ];
    for j in (0..n).filter(|&j| j != i) {
        c.push((thi(j), ScalarExpr::sin_sq(ri(j))));
    }
    DifferentialForm::one_form(&chart, c)
}

/// φ ↦ −φ on a chart whose coordinate 0 is φ.
fn flip_phi(f: &DifferentialForm) -> Result<DifferentialForm> {
    let dim = f.chart().dim();
    let images: Vec<ScalarExpr> =
        (0..dim).map(|j| if j == 0 { -ScalarExpr::coord(0) } else { ScalarExpr::coord(j) }).collect();
    f.pullback(f.chart(), &images)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sheet {
    A,
    B,
    Collar,
}

/// A point of D(U): a sheet and the radii (the collar uses t in place of
/// the face radius, recorded separately).
#[derive(Clone, Debug, PartialEq)]
pub struct DoublePoint {
    pub sheet: Sheet,
    pub radii: Vec<f64>,
}

/// D(U) minus open core tubes {|r| < δ} on the listed sheets.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionRecord {
    pub name: String,
    pub radius: f64,
    pub core_radius: f64,
    pub removed: Vec<Sheet>,
}

impl RegionRecord {
    pub fn double(radius: f64) -> RegionRecord {
        RegionRecord { name: "double".into(), radius, core_radius: 0.1, removed: Vec::new() }
    }

    pub fn remove_core(&self, sheet: Sheet, name: &str) -> Result<RegionRecord> {
        if sheet == Sheet::Collar || self.removed.contains(&sheet) {
            return Err(Error::BadRegion(format!("no core tube left on {sheet:?}")));
        }
        let mut out = self.clone();
        out.removed.push(sheet);
        out.removed.sort();
        out.name = name.to_string();
        Ok(out)
    }

    /// Boundary components: one per removed core tube.
    pub fn boundary_faces(&self) -> usize {
        self.removed.len()
    }

    pub fn in_core(&self, p: &DoublePoint) -> bool {
        p.sheet != Sheet::Collar && libm::sqrt(p.radii.iter().map(|r| r * r).sum::<f64>()) < self.core_radius
    }

    pub fn contains(&self, p: &DoublePoint) -> bool {
        let in_sheet = p.radii.iter().all(|&r| (0.0..=self.radius + 1e-12).contains(&r));
        in_sheet && !(self.removed.contains(&p.sheet) && self.in_core(p))
    }
}

fn sample_points(n: usize, radius: f64, per_axis: usize) -> Vec<DoublePoint> {
    let mut out = Vec::new();
    let total = per_axis.pow(n as u32);
    for sheet in [Sheet::A, Sheet::B, Sheet::Collar] {
        for idx in 0..total {
            let mut rest = idx;
            let radii = (0..n)
                .map(|_| {
                    let k = rest % per_axis;
                    rest /= per_axis;
                    radius * k as f64 / (per_axis - 1) as f64
                })
                .collect();
            out.push(DoublePoint { sheet, radii });
        }
    }
    out
}

pub fn verify_double(n: usize, k: usize) -> Result<ConstructionReport> {
    check_dim(n)?;
    if k == 0 {
        return Err(Error::BadIndex("fold k must be at least 1".into()));
    }
    let mut params = Params::new(n, crate::analysis::DEFAULT_POINTS);
    params.k = Some(k);
    let mut rep = ConstructionReport::new("double", params);
    let pi = core::f64::consts::PI;
    let quarter_turns = [
        ("0", Value::int(0)),
        ("pi/2", Value::PiMultiple(qr(1, 2))),
        ("pi", Value::PiMultiple(qr(1, 1))),
        ("3pi/2", Value::PiMultiple(qr(3, 2))),
    ];
    for i in 0..n {
        let face = face_form(n, k, i)?;
        let no_dtheta = face.components().keys().all(|&m| m & (1 << (thi(i) - 1)) == 0);
        let printed = printed_face_form(n, k, i)?;
        let ok = face.same_as(&printed)? && (k % 2 == 0 || no_dtheta);
        rep.push(Check::symbolic(&format!("face-{}-form", i + 1), ok).with("face_form", face.to_text(&Default::default())));
        let collar = collar_form(n, i)?;
        let mut exact = Vec::new();
        let mut flipped = Vec::new();
        for (label, v) in &quarter_turns {
            let c = collar.restrict(&[(ri(i), v.clone())])?;
            if c.same_as(&face)? {
                exact.push(label.to_string());
            }
            if flip_phi(&c)?.same_as(&face)? {
                flipped.push(label.to_string());
            }
        }
        rep.push(
            Check::symbolic(&format!("collar-{}-meets-face", i + 1), !exact.is_empty() || !flipped.is_empty())
                .with("exact_at_t", exact.clone())
                .with("after_phi_flip_at_t", flipped.clone()),
        );
        if i == 0 {
            rep.note(format!(
                "collar vs face (k = {k}): equal at t in {exact:?}; equal after phi -> -phi at t in {flipped:?}"
            ));
        }
    }
    // Bookkeeping of the model tube and the wide domain.
    let radius = libm::sqrt((k as f64 + 1.0) * pi / 2.0);
    let double = RegionRecord::double(radius);
    let model = double.remove_core(Sheet::A, "model tube")?;
    let wide = model.remove_core(Sheet::B, "wide Giroux domain")?;
    let per_axis = if n <= 2 { 13 } else { 6 };
    let pts = sample_points(n, radius, per_axis);
    let mut violations = 0usize;
    for p in &pts {
        let core_a = p.sheet == Sheet::A && double.in_core(p);
        let core_b = p.sheet == Sheet::B && double.in_core(p);
        if model.contains(p) != (double.contains(p) && !core_a) {
            violations += 1;
        }
        if wide.contains(p) != (double.contains(p) && !core_a && !core_b) {
            violations += 1;
        }
    }
    rep.push(
        Check::grid("bookkeeping", violations == 0 && model.boundary_faces() == 1 && wide.boundary_faces() == 2)
            .with("samples", pts.len())
            .with("violations", violations)
            .with("model_tube_boundary_faces", model.boundary_faces())
            .with("wide_domain_boundary_faces", wide.boundary_faces()),
    );
    Ok(rep)
}
