//! Sparse differential forms, vector fields and diagonal metrics on a chart.
//!
//! Basis p-forms dx_I are keyed by the bit mask of I; bit order is
//! coordinate order, so the mask determines the increasing tuple.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::scalar::{check_value, q, Env, NoEnv, ScalarExpr, Symbols, Value};

pub type ChartRef = Arc<Chart>;

pub fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of dx_I ∧ dx_J relative to dx_{I∪J}; 0 if I and J overlap.
pub fn wedge_sign(a: u32, b: u32) -> i64 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> (j + 1)).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the permutation sorting `idx`, or 0 on a repeat.
fn sort_sign(idx: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return 0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn same_chart(a: &ChartRef, b: &ChartRef) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::ChartMismatch)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialForm {
    chart: ChartRef,
    degree: usize,
    comps: BTreeMap<u32, ScalarExpr>,
}

impl DifferentialForm {
    pub fn zero(chart: &ChartRef, degree: usize) -> DifferentialForm {
        DifferentialForm { chart: chart.clone(), degree, comps: BTreeMap::new() }
    }

    pub fn scalar(chart: &ChartRef, f: ScalarExpr) -> DifferentialForm {
        Self::from_map(chart, 0, [(0u32, f)].into_iter().collect())
    }

    pub fn dx(chart: &ChartRef, i: usize) -> DifferentialForm {
        Self::from_map(chart, 1, [(1u32 << i, ScalarExpr::one())].into_iter().collect())
    }

    /// Sum of c·dx_{i₁}∧…∧dx_{i_p}; index lists may be unsorted.
    pub fn from_terms(
        chart: &ChartRef,
        degree: usize,
        terms: Vec<(Vec<usize>, ScalarExpr)>,
    ) -> Result<DifferentialForm> {
        if degree > chart.dim() {
            return Err(Error::BadIndex(format!("degree {degree} exceeds dimension {}", chart.dim())));
        }
        let mut acc: BTreeMap<u32, Vec<ScalarExpr>> = BTreeMap::new();
        for (idx, c) in terms {
            if idx.len() != degree || idx.iter().any(|&i| i >= chart.dim()) {
                return Err(Error::BadIndex(format!("index tuple {idx:?} for degree {degree}")));
            }
            c.check_on(chart)?;
            let s = sort_sign(&idx);
            if s == 0 {
                continue;
            }
            acc.entry(mask_of(&idx)).or_default().push(c.scale(&q(s)));
        }
        let comps = acc.into_iter().map(|(k, v)| (k, ScalarExpr::sum(v.iter()))).collect();
        Ok(Self::from_map(chart, degree, comps))
    }

    /// Σ cᵢ dxᵢ.
    pub fn one_form(chart: &ChartRef, coeffs: Vec<(usize, ScalarExpr)>) -> Result<DifferentialForm> {
        Self::from_terms(chart, 1, coeffs.into_iter().map(|(i, c)| (alloc::vec![i], c)).collect())
    }

    fn from_map(chart: &ChartRef, degree: usize, comps: BTreeMap<u32, ScalarExpr>) -> DifferentialForm {
        let comps = comps.into_iter().filter(|(_, c)| !c.is_symbolic_zero()).collect();
        DifferentialForm { chart: chart.clone(), degree, comps }
    }

    /// ∏(weights)·dx₀∧…∧dx_{dim−1}.
    pub fn volume(chart: &ChartRef) -> DifferentialForm {
        let density = ScalarExpr::product(
            chart.weights().iter().map(|&w| ScalarExpr::coord(w)).collect::<Vec<_>>().iter(),
        );
        let full = if chart.dim() == 32 { u32::MAX } else { (1u32 << chart.dim()) - 1 };
        Self::from_map(chart, chart.dim(), [(full, density)].into_iter().collect())
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<u32, ScalarExpr> {
        &self.comps
    }

    pub fn component(&self, indices: &[usize]) -> ScalarExpr {
        let s = sort_sign(indices);
        if s == 0 || indices.len() != self.degree {
            return ScalarExpr::zero();
        }
        self.comps.get(&mask_of(indices)).map_or_else(ScalarExpr::zero, |c| c.scale(&q(s)))
    }

    pub fn is_symbolic_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn dependencies(&self) -> u32 {
        self.comps.values().fold(0, |m, c| m | c.dependencies())
    }

    pub fn add(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        same_chart(&self.chart, &other.chart)?;
        if self.degree != other.degree {
            return Err(Error::BadIndex(format!("adding degrees {} and {}", self.degree, other.degree)));
        }
        let mut comps = self.comps.clone();
        for (k, c) in &other.comps {
            let v = comps.remove(k).map_or_else(|| c.clone(), |a| &a + c);
            comps.insert(*k, v);
        }
        Ok(Self::from_map(&self.chart, self.degree, comps))
    }

    pub fn sub(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DifferentialForm {
        self.scale(&ScalarExpr::int(-1))
    }

    pub fn scale(&self, f: &ScalarExpr) -> DifferentialForm {
        let comps = self.comps.iter().map(|(k, c)| (*k, c * f)).collect();
        Self::from_map(&self.chart, self.degree, comps)
    }

    pub fn map_coefficients<F>(&self, mut f: F) -> Result<DifferentialForm>
    where
        F: FnMut(&ScalarExpr) -> Result<ScalarExpr>,
    {
        let mut comps = BTreeMap::new();
        for (k, c) in &self.comps {
            comps.insert(*k, f(c)?);
        }
        Ok(Self::from_map(&self.chart, self.degree, comps))
    }

    pub fn wedge(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        same_chart(&self.chart, &other.chart)?;
        let degree = self.degree + other.degree;
        if degree > self.chart.dim() {
            return Ok(Self::zero(&self.chart, degree));
        }
        let mut acc: BTreeMap<u32, Vec<ScalarExpr>> = BTreeMap::new();
        for (ka, ca) in &self.comps {
            for (kb, cb) in &other.comps {
                let s = wedge_sign(*ka, *kb);
                if s == 0 {
                    continue;
                }
                acc.entry(ka | kb).or_default().push((ca * cb).scale(&q(s)));
            }
        }
        let comps = acc.into_iter().map(|(k, v)| (k, ScalarExpr::sum(v.iter()))).collect();
        Ok(Self::from_map(&self.chart, degree, comps))
    }

    /// Wedge power; the 0-th power is the constant 1.
    pub fn power(&self, n: usize) -> Result<DifferentialForm> {
        let mut acc = Self::scalar(&self.chart, ScalarExpr::one());
        for _ in 0..n {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    pub fn ext_d(&self) -> DifferentialForm {
        let dim = self.chart.dim();
        let mut acc: BTreeMap<u32, Vec<ScalarExpr>> = BTreeMap::new();
        for (k, c) in &self.comps {
            for i in 0..dim {
                if k & (1 << i) != 0 || c.dependencies() & (1 << i) == 0 {
                    continue;
                }
                let dc = c.differentiate(i);
                if dc.is_symbolic_zero() {
                    continue;
                }
                let s = wedge_sign(1 << i, *k);
                acc.entry(k | (1 << i)).or_default().push(dc.scale(&q(s)));
            }
        }
        let comps = acc.into_iter().map(|(k, v)| (k, ScalarExpr::sum(v.iter()))).collect();
        Self::from_map(&self.chart, self.degree + 1, comps)
    }

    pub fn interior(&self, x: &VectorField) -> Result<DifferentialForm> {
        same_chart(&self.chart, &x.chart)?;
        if self.degree == 0 {
            return Err(Error::DegreeZero);
        }
        let mut acc: BTreeMap<u32, Vec<ScalarExpr>> = BTreeMap::new();
        for (k, c) in &self.comps {
            for (&i, xi) in &x.comps {
                if k & (1 << i) == 0 {
                    continue;
                }
                let before = (k & ((1u32 << i) - 1)).count_ones();
                let s = if before % 2 == 0 { 1 } else { -1 };
                acc.entry(k & !(1 << i)).or_default().push((c * xi).scale(&q(s)));
            }
        }
        let comps = acc.into_iter().map(|(k, v)| (k, ScalarExpr::sum(v.iter()))).collect();
        Ok(Self::from_map(&self.chart, self.degree - 1, comps))
    }

    /// L_X a = d(i_X a) + i_X(da).
    pub fn lie_derivative(&self, x: &VectorField) -> Result<DifferentialForm> {
        same_chart(&self.chart, &x.chart)?;
        let second = self.ext_d().interior(x)?;
        if self.degree == 0 {
            return Ok(second);
        }
        self.interior(x)?.ext_d().add(&second)
    }

    /// Pullback along the inclusion of {xᵢ = cᵢ}. Returns a form on the chart
    /// of the remaining coordinates.
    pub fn restrict(&self, assignment: &[(usize, Value)]) -> Result<DifferentialForm> {
        let dim = self.chart.dim();
        let mut fixed = 0u32;
        for (i, v) in assignment {
            if *i >= dim {
                return Err(Error::BadAssignment(format!("coordinate index {i} out of range")));
            }
            if fixed & (1 << i) != 0 {
                return Err(Error::BadAssignment(format!("{} assigned twice", self.chart.name(*i))));
            }
            check_value(&self.chart, *i, v)?;
            fixed |= 1 << i;
        }
        let keep: Vec<usize> = (0..dim).filter(|i| fixed & (1 << i) == 0).collect();
        let mut map = alloc::vec![None; dim];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = Some(new);
        }
        let sub = Arc::new(self.chart.sub_chart(&keep));
        let mut comps = BTreeMap::new();
        for (k, c) in &self.comps {
            if k & fixed != 0 {
                continue;
            }
            let mut e = c.clone();
            for (i, v) in assignment {
                e = e.substitute(*i, v)?;
            }
            let e = e.reindex(&map)?;
            let nk = indices_of(*k).iter().fold(0u32, |m, &i| m | (1 << map[i].unwrap()));
            comps.insert(nk, e);
        }
        Ok(Self::from_map(&sub, self.degree, comps))
    }

    /// Same as `restrict` with coordinates named.
    pub fn restrict_named(&self, assignment: &[(&str, Value)]) -> Result<DifferentialForm> {
        let mut a = Vec::with_capacity(assignment.len());
        for (n, v) in assignment {
            a.push((self.chart.index(n)?, v.clone()));
        }
        self.restrict(&a)
    }

    /// Pullback along the map whose j-th component `images[j]` expresses
    /// source coordinate j on `target`.
    pub fn pullback(&self, target: &ChartRef, images: &[ScalarExpr]) -> Result<DifferentialForm> {
        if images.len() != self.chart.dim() {
            return Err(Error::BadAssignment("pullback needs one image per coordinate".into()));
        }
        let diffs: Vec<DifferentialForm> = images
            .iter()
            .map(|e| {
                e.check_on(target)?;
                Ok(Self::scalar(target, e.clone()).ext_d())
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target, self.degree);
        for (k, c) in &self.comps {
            let mut term = Self::scalar(target, c.compose(images)?);
            for i in indices_of(*k) {
                term = term.wedge(&diffs[i])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    pub fn hodge_star(&self, g: &DiagonalMetric) -> Result<DifferentialForm> {
        same_chart(&self.chart, &g.chart)?;
        let dim = self.chart.dim();
        let full = if dim == 32 { u32::MAX } else { (1u32 << dim) - 1 };
        let sqrt_det = ScalarExpr::product(g.scale.iter());
        let mut comps = BTreeMap::new();
        for (k, c) in &self.comps {
            let comp = full & !k;
            let mut f = c * &sqrt_det;
            for i in indices_of(*k) {
                f = &f * &g.inv_sq[i];
            }
            comps.insert(comp, f.scale(&q(wedge_sign(*k, comp))));
        }
        Ok(Self::from_map(&self.chart, dim - self.degree, comps))
    }

    /// The f with self = f·vol, both of top degree.
    pub fn top_ratio(&self, vol: &DifferentialForm) -> Result<ScalarExpr> {
        same_chart(&self.chart, &vol.chart)?;
        let dim = self.chart.dim();
        if self.degree != dim || vol.degree != dim {
            return Err(Error::NotTopDegree);
        }
        let v = vol.comps.values().next().ok_or(Error::ZeroVolume)?;
        let c = self.comps.values().next().cloned().unwrap_or_else(ScalarExpr::zero);
        Ok(&c * &v.inverse()?)
    }

    /// Symbolic equality.
    pub fn same_as(&self, other: &DifferentialForm) -> Result<bool> {
        Ok(self.sub(other)?.is_symbolic_zero())
    }

    pub fn evaluate(&self, point: &[f64]) -> Result<Vec<(u32, f64)>> {
        self.evaluate_in(point, &NoEnv)
    }

    pub fn evaluate_in(&self, point: &[f64], env: &dyn Env) -> Result<Vec<(u32, f64)>> {
        self.comps.iter().map(|(k, c)| Ok((*k, c.evaluate_in(point, env)?))).collect()
    }

    pub fn to_text(&self, sym: &Symbols) -> String {
        if self.comps.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (k, c)) in self.comps.iter().enumerate() {
            if n > 0 {
                out.push_str(" + ");
            }
            let basis: Vec<String> =
                indices_of(*k).iter().map(|&i| format!("d{}", self.chart.name(i))).collect();
            let _ = write!(out, "({})", c.to_text(Some(&self.chart), sym));
            if !basis.is_empty() {
                let _ = write!(out, "*{}", basis.join("^"));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    chart: ChartRef,
    comps: BTreeMap<usize, ScalarExpr>,
}

impl VectorField {
    pub fn new(chart: &ChartRef, comps: Vec<(usize, ScalarExpr)>) -> Result<VectorField> {
        let mut map: BTreeMap<usize, ScalarExpr> = BTreeMap::new();
        for (i, c) in comps {
            if i >= chart.dim() {
                return Err(Error::BadIndex(format!("vector component {i}")));
            }
            c.check_on(chart)?;
            let v = map.remove(&i).map_or_else(|| c.clone(), |a| &a + &c);
            map.insert(i, v);
        }
        map.retain(|_, c| !c.is_symbolic_zero());
        Ok(VectorField { chart: chart.clone(), comps: map })
    }

    pub fn basis(chart: &ChartRef, i: usize) -> VectorField {
        VectorField::new(chart, alloc::vec![(i, ScalarExpr::one())]).expect("basis index in range")
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn components(&self) -> &BTreeMap<usize, ScalarExpr> {
        &self.comps
    }

    pub fn component(&self, i: usize) -> ScalarExpr {
        self.comps.get(&i).cloned().unwrap_or_else(ScalarExpr::zero)
    }

    pub fn is_symbolic_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        same_chart(&self.chart, &other.chart)?;
        let mut v: Vec<(usize, ScalarExpr)> =
            self.comps.iter().map(|(i, c)| (*i, c.clone())).collect();
        v.extend(other.comps.iter().map(|(i, c)| (*i, c.clone())));
        VectorField::new(&self.chart, v)
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField> {
        self.add(&other.scale(&ScalarExpr::int(-1)))
    }

    pub fn scale(&self, f: &ScalarExpr) -> VectorField {
        let mut comps: BTreeMap<usize, ScalarExpr> =
            self.comps.iter().map(|(i, c)| (*i, c * f)).collect();
        comps.retain(|_, c| !c.is_symbolic_zero());
        VectorField { chart: self.chart.clone(), comps }
    }

    pub fn map_coefficients<F>(&self, mut f: F) -> Result<VectorField>
    where
        F: FnMut(&ScalarExpr) -> Result<ScalarExpr>,
    {
        let mut v = Vec::with_capacity(self.comps.len());
        for (i, c) in &self.comps {
            v.push((*i, f(c)?));
        }
        VectorField::new(&self.chart, v)
    }

    pub fn dependencies(&self) -> u32 {
        self.comps.values().fold(0, |m, c| m | c.dependencies())
    }

    /// Dense components at a point.
    pub fn evaluate_in(&self, point: &[f64], env: &dyn Env) -> Result<Vec<f64>> {
        let mut out = alloc::vec![0.0; self.chart.dim()];
        for (i, c) in &self.comps {
            out[*i] = c.evaluate_in(point, env)?;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[f64]) -> Result<Vec<f64>> {
        self.evaluate_in(point, &NoEnv)
    }

    pub fn to_text(&self, sym: &Symbols) -> String {
        if self.comps.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(i, c)| format!("({})*d/d{}", c.to_text(Some(&self.chart), sym), self.chart.name(*i)))
            .collect();
        parts.join(" + ")
    }
}

/// Diagonal metric given by scale factors hᵢ with gᵢᵢ = hᵢ². Each hᵢ must be
/// a single term so that √det g and gᵢᵢ⁻¹ stay in the expression class.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalMetric {
    chart: ChartRef,
    scale: Vec<ScalarExpr>,
    inv_sq: Vec<ScalarExpr>,
}

impl DiagonalMetric {
    pub fn from_scale_factors(chart: &ChartRef, scale: Vec<ScalarExpr>) -> Result<DiagonalMetric> {
        if scale.len() != chart.dim() {
            return Err(Error::BadIndex("one scale factor per coordinate".into()));
        }
        let mut inv_sq = Vec::with_capacity(scale.len());
        for h in &scale {
            h.check_on(chart)?;
            inv_sq.push(h.inverse()?.pow(2));
        }
        Ok(DiagonalMetric { chart: chart.clone(), scale, inv_sq })
    }

    /// dφ² + Σ(drᵢ² + rᵢ²dθᵢ²) on a tube chart.
    pub fn cylindrical(chart: &ChartRef) -> Result<DiagonalMetric> {
        let n = (chart.dim() - 1) / 2;
        let mut h = alloc::vec![ScalarExpr::one(); chart.dim()];
        for i in 0..n {
            h[2 + 2 * i] = ScalarExpr::coord(1 + 2 * i);
        }
        Self::from_scale_factors(chart, h)
    }

    /// dφ² + Σ(rᵢ²drᵢ² + dθᵢ²): rᵢdrᵢ and dθᵢ orthonormal. Same volume form
    /// as the cylindrical metric.
    pub fn polar_area(chart: &ChartRef) -> Result<DiagonalMetric> {
        let n = (chart.dim() - 1) / 2;
        let mut h = alloc::vec![ScalarExpr::one(); chart.dim()];
        for i in 0..n {
            h[1 + 2 * i] = ScalarExpr::coord(1 + 2 * i);
        }
        Self::from_scale_factors(chart, h)
    }

    pub fn euclidean(chart: &ChartRef) -> DiagonalMetric {
        Self::from_scale_factors(chart, alloc::vec![ScalarExpr::one(); chart.dim()])
            .expect("unit scale factors")
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn scale_factors(&self) -> &[ScalarExpr] {
        &self.scale
    }

    /// gᵢᵢ = hᵢ².
    pub fn entries(&self) -> Vec<ScalarExpr> {
        self.scale.iter().map(|h| h.pow(2)).collect()
    }

    /// Numeric diagonal at a point; PoleOnRegion if an entry vanishes.
    pub fn entries_at(&self, point: &[f64]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.scale.len());
        for (i, h) in self.scale.iter().enumerate() {
            let v = h.evaluate(point)?;
            if libm::fabs(v) < 1e-12 {
                return Err(Error::PoleOnRegion(format!(
                    "g_{0}{0} vanishes at {point:?}",
                    self.chart.name(i)
                )));
            }
            out.push(v * v);
        }
        Ok(out)
    }
}
