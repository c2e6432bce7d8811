//! Named constructions and their verification suites.

pub mod blob;
pub mod double;
pub mod euler;
pub mod giroux;
pub mod lutz;
pub mod otw;
pub mod prelag;
pub mod tube;
pub mod twist;

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::analysis::{Region, Stratum};
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::forms::{ChartRef, DifferentialForm, VectorField};
use crate::report::Check;
use crate::scalar::{q, ScalarExpr};

/// A built object: forms, fields and regions on one chart, plus the table of
/// expected identities.
#[derive(Clone, Debug)]
pub struct NamedConstruction {
    pub name: String,
    pub chart: ChartRef,
    pub forms: Vec<(String, DifferentialForm)>,
    pub fields: Vec<(String, VectorField)>,
    pub regions: Vec<(String, Region)>,
    pub identities: Vec<Identity>,
}

/// computed == expected, to be checked symbolically.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub computed: DifferentialForm,
    pub expected: DifferentialForm,
}

impl Identity {
    pub fn new(name: &str, computed: DifferentialForm, expected: DifferentialForm) -> Identity {
        Identity { name: name.to_string(), computed, expected }
    }

    pub fn holds(&self) -> bool {
        self.computed.same_as(&self.expected).unwrap_or(false)
    }

    pub fn check(&self) -> Check {
        Check::symbolic(&self.name, self.holds())
    }
}

impl NamedConstruction {
    pub fn new(name: &str, chart: &ChartRef) -> NamedConstruction {
        NamedConstruction {
            name: name.to_string(),
            chart: chart.clone(),
            forms: Vec::new(),
            fields: Vec::new(),
            regions: Vec::new(),
            identities: Vec::new(),
        }
    }

    pub fn form(&self, name: &str) -> Option<&DifferentialForm> {
        self.forms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn region(&self, name: &str) -> Option<&Region> {
        self.regions.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn identity_checks(&self) -> Vec<Check> {
        self.identities.iter().map(Identity::check).collect()
    }
}

pub fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > 8 {
        return Err(Error::BadIndex(alloc::format!("dimension parameter n = {n} outside 1..=8")));
    }
    Ok(())
}

/// Index of rᵢ (0-based i) on a tube chart.
pub fn ri(i: usize) -> usize {
    1 + 2 * i
}

/// Index of θᵢ (0-based i) on a tube chart.
pub fn thi(i: usize) -> usize {
    2 + 2 * i
}

pub fn tube_chart(n: usize) -> ChartRef {
    Arc::new(Chart::cylindrical(n))
}

pub fn line_chart(n: usize) -> ChartRef {
    Arc::new(Chart::line_cylindrical(n))
}

/// ∏ᵢ∈idx cos(rᵢ²).
pub(crate) fn cos_product(idx: impl Iterator<Item = usize>) -> ScalarExpr {
    let parts: Vec<ScalarExpr> = idx.map(|i| ScalarExpr::cos_sq(ri(i))).collect();
    ScalarExpr::product(parts.iter())
}

/// ω_tw = ∏cos(rᵢ²)dφ + Σ sin(rᵢ²)dθᵢ on a tube chart (circle or line core).
pub fn omega_tw(chart: &ChartRef) -> DifferentialForm {
    let n = (chart.dim() - 1) / 2;
    let mut c = alloc::vec![(0usize, cos_product(0..n))];
    for i in 0..n {
        c.push((thi(i), ScalarExpr::sin_sq(ri(i))));
    }
    DifferentialForm::one_form(chart, c).expect("tube chart")
}

/// 2ⁿn!{∏cos² + Σᵢ sin²ᵢ∏ⱼ≠ᵢcos²ⱼ} with cos = cos(rᵢ²).
pub fn volume_bracket(n: usize) -> ScalarExpr {
    let c2 = |i: usize| ScalarExpr::cos_sq(ri(i)).pow(2);
    let all: Vec<ScalarExpr> = (0..n).map(c2).collect();
    let mut terms = alloc::vec![ScalarExpr::product(all.iter())];
    for i in 0..n {
        let rest: Vec<ScalarExpr> = (0..n).filter(|&j| j != i).map(c2).collect();
        terms.push(&ScalarExpr::sin_sq(ri(i)).pow(2) * &ScalarExpr::product(rest.iter()));
    }
    let scale = crate::scalar::factorial(n) * q(1i64 << n);
    ScalarExpr::sum(terms.iter()).scale(&scale)
}

/// U(R): the tube box with every rᵢ in [0, R].
pub fn tube_region(chart: &ChartRef, radius: f64, points: usize) -> Result<Region> {
    let n = (chart.dim() - 1) / 2;
    let mut reg = Region::new(chart);
    for i in 0..n {
        reg = reg.with_bounds(ri(i), 0.0, radius)?.with_points(ri(i), points);
    }
    Ok(reg)
}

/// Strata {rᵢ = √((½+l)π), rⱼ = √((½+m)π)}, i < j, inside U(radius).
pub fn locus_strata(n: usize, radius: f64) -> Vec<Stratum> {
    let pi = core::f64::consts::PI;
    let radii: Vec<f64> = (0..)
        .map(|l| libm::sqrt((0.5 + l as f64) * pi))
        .take_while(|r| *r <= radius + 1e-12)
        .collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (l, a) in radii.iter().enumerate() {
                for (m, b) in radii.iter().enumerate() {
                    out.push(Stratum {
                        name: alloc::format!("r{}=sqrt({}pi/2),r{}=sqrt({}pi/2)", i + 1, 2 * l + 1, j + 1, 2 * m + 1),
                        fixed: alloc::vec![(ri(i), *a), (ri(j), *b)],
                    });
                }
            }
        }
    }
    out
}

pub(crate) fn sqrt_pi() -> f64 {
    libm::sqrt(core::f64::consts::PI)
}
