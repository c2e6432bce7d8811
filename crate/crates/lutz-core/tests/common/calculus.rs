//! Random forms on a 4-dimensional chart and the identities of the exterior
//! calculus, checked symbolically and against numeric oracles.

use std::sync::Arc;

use lutz_core::forms::{indices_of, mask_of};
use lutz_core::scalar::{qr, Arg, Atom, Base};
use lutz_core::{Chart, ChartRef, CoordKind, DiagonalMetric, DifferentialForm, ScalarExpr, VectorField};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DIM: usize = 4;
pub const FD_STEP: f64 = 1e-5;
pub const FD_TOL: f64 = 1e-6;
pub const WEDGE_TOL: f64 = 1e-9;
pub const POINTS_PER_INSTANCE: usize = 32;

pub fn chart() -> ChartRef {
    Arc::new(
        Chart::new(vec![
            ("phi", CoordKind::Angle),
            ("r", CoordKind::Radial),
            ("th", CoordKind::Angle),
            ("x", CoordKind::Linear),
        ])
        .unwrap(),
    )
}

fn atom_pool() -> Vec<Atom> {
    vec![
        Atom::new(Base::Coord(1), 1),
        Atom::new(Base::Coord(1), 2),
        Atom::new(Base::Coord(3), 1),
        Atom::new(Base::Coord(3), 2),
        Atom::new(Base::Sin(Arg::Coord(0)), 1),
        Atom::new(Base::Cos(Arg::Coord(0)), 1),
        Atom::new(Base::Sin(Arg::Coord(2)), 1),
        Atom::new(Base::Cos(Arg::Coord(2)), 2),
        Atom::new(Base::Sin(Arg::CoordSquared(1)), 1),
        Atom::new(Base::Cos(Arg::CoordSquared(1)), 1),
        Atom::new(Base::Sin(Arg::Coord(3)), 1),
    ]
}

fn term() -> impl Strategy<Value = (i64, i64, Vec<usize>)> {
    (-3i64..=3, 1i64..=3, prop::collection::vec(0..atom_pool().len(), 0..=2))
}

pub fn scalar() -> impl Strategy<Value = ScalarExpr> {
    prop::collection::vec(term(), 1..=3).prop_map(|ts| {
        let pool = atom_pool();
        let parts: Vec<ScalarExpr> = ts
            .into_iter()
            .map(|(a, b, idx)| {
                let a = if a == 0 { 1 } else { a };
                ScalarExpr::term(qr(a, b), idx.into_iter().map(|i| pool[i]).collect())
            })
            .collect();
        ScalarExpr::sum(parts.iter())
    })
}

fn subsets(p: usize) -> Vec<Vec<usize>> {
    subsets_in(DIM, p)
}

pub fn subsets_in(dim: usize, p: usize) -> Vec<Vec<usize>> {
    (0u32..1 << dim).filter(|m| m.count_ones() as usize == p).map(indices_of).collect()
}

pub fn form(p: usize) -> impl Strategy<Value = DifferentialForm> {
    let basis = subsets(p);
    let n = basis.len();
    (prop::collection::vec(scalar(), n), prop::collection::vec(any::<bool>(), n)).prop_map(move |(cs, keep)| {
        let terms = basis
            .iter()
            .cloned()
            .zip(cs)
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(t, _)| t)
            .collect();
        DifferentialForm::from_terms(&chart(), p, terms).unwrap()
    })
}

pub fn field() -> impl Strategy<Value = VectorField> {
    prop::collection::vec(scalar(), DIM)
        .prop_map(|cs| VectorField::new(&chart(), cs.into_iter().enumerate().collect()).unwrap())
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub alpha: DifferentialForm,
    pub beta: DifferentialForm,
    pub x: VectorField,
    pub seed: u64,
}

pub fn instance() -> impl Strategy<Value = Instance> {
    (1usize..=2, 0usize..=2)
        .prop_flat_map(|(p, q)| (form(p), form(q), field(), any::<u64>()))
        .prop_map(|(alpha, beta, x, seed)| Instance { alpha, beta, x, seed })
}

/// Metric with scale factors (1, 1, r, 1).
pub fn metric() -> DiagonalMetric {
    let c = chart();
    DiagonalMetric::from_scale_factors(&c, vec![ScalarExpr::one(), ScalarExpr::one(), ScalarExpr::coord(1), ScalarExpr::one()])
        .unwrap()
}

fn perm_sign(v: &[usize]) -> Option<i64> {
    let mut inv = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] == v[j] {
                return None;
            }
            if v[i] > v[j] {
                inv += 1;
            }
        }
    }
    Some(if inv % 2 == 0 { 1 } else { -1 })
}

/// Component of an alternating form on an arbitrary index tuple.
fn alt_symbolic(f: &DifferentialForm, idx: &[usize]) -> ScalarExpr {
    match perm_sign(idx) {
        None => ScalarExpr::zero(),
        Some(s) => f.component(&sorted(idx)).scale(&qr(s, 1)),
    }
}

fn sorted(idx: &[usize]) -> Vec<usize> {
    let mut v = idx.to_vec();
    v.sort();
    v
}

/// Lie derivative from the coordinate formula
/// (L_X ω)_I = Xʲ∂ⱼω_I + Σₖ ω_{I[k→j]} ∂_{iₖ}Xʲ.
pub fn lie_oracle(w: &DifferentialForm, x: &VectorField) -> DifferentialForm {
    let (p, dim) = (w.degree(), w.chart().dim());
    let mut terms = Vec::new();
    for idx in subsets_in(dim, p) {
        let mut acc = ScalarExpr::zero();
        for j in 0..dim {
            acc = &acc + &(&x.component(j) * &w.component(&idx).differentiate(j));
        }
        for k in 0..p {
            for j in 0..dim {
                let mut t = idx.clone();
                t[k] = j;
                let c = alt_symbolic(w, &t);
                if c.is_symbolic_zero() {
                    continue;
                }
                acc = &acc + &(&c * &x.component(j).differentiate(idx[k]));
            }
        }
        terms.push((idx, acc));
    }
    DifferentialForm::from_terms(w.chart(), p, terms).unwrap()
}

fn eval_components(f: &DifferentialForm, p: &[f64]) -> std::collections::BTreeMap<u32, f64> {
    f.evaluate(p).unwrap().into_iter().collect()
}

fn alt_numeric(comps: &std::collections::BTreeMap<u32, f64>, idx: &[usize]) -> f64 {
    match perm_sign(idx) {
        None => 0.0,
        Some(s) => s as f64 * comps.get(&mask_of(idx)).copied().unwrap_or(0.0),
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).product::<usize>() as f64
}

/// (α∧β)_I = (1/p!q!) Σ_σ sgn σ α(I_σ[..p]) β(I_σ[p..]).
pub fn wedge_oracle(a: &DifferentialForm, b: &DifferentialForm, pt: &[f64]) -> Vec<(Vec<usize>, f64)> {
    let (p, q) = (a.degree(), b.degree());
    let (ca, cb) = (eval_components(a, pt), eval_components(b, pt));
    let perms = permutations(p + q);
    subsets(p + q)
        .into_iter()
        .map(|idx| {
            let mut s = 0.0;
            for sigma in &perms {
                let t: Vec<usize> = sigma.iter().map(|&k| idx[k]).collect();
                let sg = perm_sign(sigma).unwrap() as f64;
                s += sg * alt_numeric(&ca, &t[..p]) * alt_numeric(&cb, &t[p..]);
            }
            (idx, s / (factorial(p) * factorial(q)))
        })
        .collect()
}

/// (dω)_I = Σₖ (−1)ᵏ ∂_{iₖ} ω_{I∖iₖ} by central differences.
pub fn d_oracle(w: &DifferentialForm, pt: &[f64]) -> Vec<(Vec<usize>, f64)> {
    let p = w.degree();
    subsets(p + 1)
        .into_iter()
        .map(|idx| {
            let mut s = 0.0;
            for (k, &i) in idx.iter().enumerate() {
                let rest: Vec<usize> = idx.iter().copied().filter(|&j| j != i).collect();
                let c = w.component(&rest);
                let (mut plus, mut minus) = (pt.to_vec(), pt.to_vec());
                plus[i] += FD_STEP;
                minus[i] -= FD_STEP;
                let der = (c.evaluate(&plus).unwrap() - c.evaluate(&minus).unwrap()) / (2.0 * FD_STEP);
                s += if k % 2 == 0 { der } else { -der };
            }
            (idx, s)
        })
        .collect()
}

pub fn sample_points(seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;
    (0..POINTS_PER_INSTANCE)
        .map(|_| vec![rng.gen_range(0.0..tau), rng.gen_range(0.3..1.5), rng.gen_range(0.0..tau), rng.gen_range(-1.0..1.0)])
        .collect()
}

fn ensure(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

/// All identities on one instance.
pub fn check_instance(inst: &Instance) -> Result<(), TestCaseError> {
    let Instance { alpha, beta, x, seed } = inst;
    let (p, q) = (alpha.degree(), beta.degree());
    ensure(alpha.ext_d().ext_d().is_symbolic_zero(), "d d alpha = 0")?;

    let lhs = alpha.wedge(beta).unwrap().ext_d();
    let sign = if p % 2 == 0 { 1 } else { -1 };
    let rhs = alpha
        .ext_d()
        .wedge(beta)
        .unwrap()
        .add(&alpha.wedge(&beta.ext_d()).unwrap().scale(&ScalarExpr::int(sign)))
        .unwrap();
    ensure(lhs.same_as(&rhs).unwrap(), "Leibniz rule")?;

    let gs = if (p * q) % 2 == 0 { 1 } else { -1 };
    let ab = alpha.wedge(beta).unwrap();
    let ba = beta.wedge(alpha).unwrap().scale(&ScalarExpr::int(gs));
    ensure(ab.same_as(&ba).unwrap(), "graded commutativity")?;

    let cartan = alpha.lie_derivative(x).unwrap();
    ensure(cartan.same_as(&lie_oracle(alpha, x)).unwrap(), "Cartan formula")?;

    let g = metric();
    let ss = alpha.hodge_star(&g).unwrap().hodge_star(&g).unwrap();
    let s = if (p * (DIM - p)) % 2 == 0 { 1 } else { -1 };
    ensure(ss.same_as(&alpha.scale(&ScalarExpr::int(s))).unwrap(), "star star sign law")?;

    let d = alpha.ext_d();
    for pt in sample_points(*seed) {
        let got = eval_components(&d, &pt);
        for (idx, v) in d_oracle(alpha, &pt) {
            let c = got.get(&mask_of(&idx)).copied().unwrap_or(0.0);
            ensure((c - v).abs() <= FD_TOL * v.abs().max(1.0), "finite-difference oracle for d")?;
        }
        let w = eval_components(&ab, &pt);
        for (idx, v) in wedge_oracle(alpha, beta, &pt) {
            let c = w.get(&mask_of(&idx)).copied().unwrap_or(0.0);
            ensure((c - v).abs() <= WEDGE_TOL * v.abs().max(1.0), "antisymmetrization oracle for wedge")?;
        }
    }
    Ok(())
}

/// Runs `cases` seeded instances; returns the number checked.
pub fn run_suite(cases: u32) -> Result<u32, String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&instance(), |inst| check_instance(&inst)).map_err(|e| e.to_string())?;
    Ok(cases)
}
