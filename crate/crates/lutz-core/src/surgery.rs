//! Bookkeeping for contact round surgeries: pieces with tagged boundaries and
//! embedded features, legality-checked rewrite steps, and the two twist
//! recipes as replayable traces.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::Serialize;

use crate::error::{Error, Result};

pub const MODEL_TUBE_TAG: &str = "model π-Lutz tube";
pub const WIDE_GIROUX_TAG: &str = "wide Giroux domain";

/// The dividing set S^{2n-2}×S¹ of a convex S^{2n-1}×S¹.
pub fn standard_dividing(n: usize) -> String {
    format!("S^{}xS^1", 2 * n - 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum BoundaryModel {
    ConvexSphereTimesCircle { dividing: String },
    XiRoundSphereTimesCircle,
    /// A component sealed off by a surgery.
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryComponent {
    pub id: String,
    #[serde(flatten)]
    pub model: BoundaryModel,
    /// Piece the component came from, kept through merges.
    pub owner: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FeatureKind {
    TransverseCircle,
    IsotropicCircle { framing: String },
    PreLagrangianTorus,
    ConvexHypersurface { dividing: String, parallel_to: Option<String> },
    XiRoundHypersurface,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Feature {
    pub id: String,
    #[serde(flatten)]
    pub kind: FeatureKind,
    /// Set when the circle is (a push-off of) the core of a model piece.
    pub core_of: Option<String>,
    /// Set on the isotropic cores glued in by an index-2n surgery.
    pub cut: Option<String>,
}

impl Feature {
    pub fn new(id: &str, kind: FeatureKind) -> Feature {
        Feature { id: id.into(), kind, core_of: None, cut: None }
    }

    pub fn core(id: &str, of: &str) -> Feature {
        Feature { core_of: Some(of.into()), ..Feature::new(id, FeatureKind::TransverseCircle) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    LutzTube,
    Double,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inserted {
    pub name: String,
    pub kind: ModelKind,
    pub cores_used: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceDescriptor {
    pub name: String,
    pub dim: usize,
    /// Underlying manifold of the host.
    pub manifold: String,
    pub model: Option<ModelKind>,
    pub boundary: Vec<BoundaryComponent>,
    pub features: Vec<Feature>,
    /// Hypersurfaces cut open by index-2n surgeries and not yet closed.
    pub open_cuts: Vec<String>,
    pub inserted: Vec<Inserted>,
    pub tags: BTreeSet<String>,
}

impl PieceDescriptor {
    pub fn new(name: &str, n: usize, manifold: &str) -> PieceDescriptor {
        PieceDescriptor {
            name: name.into(),
            dim: 2 * n + 1,
            manifold: manifold.into(),
            model: None,
            boundary: Vec::new(),
            features: Vec::new(),
            open_cuts: Vec::new(),
            inserted: Vec::new(),
            tags: BTreeSet::new(),
        }
    }

    pub fn with_model(mut self, kind: ModelKind) -> Self {
        self.model = Some(kind);
        self
    }

    pub fn with_boundary(mut self, id: &str, model: BoundaryModel) -> Self {
        let owner = self.name.clone();
        self.boundary.push(BoundaryComponent { id: id.into(), model, owner });
        self
    }

    pub fn with_feature(mut self, f: Feature) -> Self {
        self.features.push(f);
        self
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.iter().all(|b| b.model == BoundaryModel::Closed)
    }

    fn feature(&self, id: &str) -> Option<&Feature> {
        self.features.iter().find(|f| f.id == id)
    }

    fn take_feature(&mut self, id: &str) -> Feature {
        let i = self.features.iter().position(|f| f.id == id).expect("located");
        self.features.remove(i)
    }

    /// Pieces are valid when dimensions are odd and every convex
    /// boundary carries a dividing tag.
    pub fn validate(&self) -> Result<()> {
        if self.dim < 3 || self.dim % 2 == 0 {
            return Err(Error::IllegalStep(format!("piece {} has dimension {}", self.name, self.dim)));
        }
        for b in &self.boundary {
            if let BoundaryModel::ConvexSphereTimesCircle { dividing } = &b.model {
                if dividing.is_empty() {
                    return Err(Error::IllegalStep(format!("convex boundary {} has no dividing tag", b.id)));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StepKind {
    #[serde(rename = "round-index-1")]
    RoundIndex1 { a: String, b: String, framings: (String, String), assumption: Option<String> },
    #[serde(rename = "round-index-2n")]
    RoundIndex2n { hypersurface: String, framing: String },
    PushOffIsotropic { circle: String },
    PushOffTransverse { circle: String },
    XiRoundToConvex { hypersurface: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryStep {
    #[serde(flatten)]
    pub kind: StepKind,
    /// Operation label the step realizes within a recipe.
    pub operation: Option<String>,
}

impl SurgeryStep {
    pub fn new(kind: StepKind) -> SurgeryStep {
        SurgeryStep { kind, operation: None }
    }

    pub fn labelled(kind: StepKind, op: &str) -> SurgeryStep {
        SurgeryStep { kind, operation: Some(op.into()) }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            StepKind::RoundIndex1 { .. } => "round-index-1",
            StepKind::RoundIndex2n { .. } => "round-index-2n",
            StepKind::PushOffIsotropic { .. } => "push-off-isotropic",
            StepKind::PushOffTransverse { .. } => "push-off-transverse",
            StepKind::XiRoundToConvex { .. } => "xi-round-to-convex",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct State {
    pub n: usize,
    pub pieces: Vec<PieceDescriptor>,
    next_core: usize,
}

impl State {
    pub fn new(n: usize, pieces: Vec<PieceDescriptor>) -> Result<State> {
        if n == 0 {
            return Err(Error::BadIndex("n must be at least 1".into()));
        }
        for p in &pieces {
            p.validate()?;
            if p.dim != 2 * n + 1 {
                return Err(Error::IllegalStep(format!("piece {} has dimension {}, expected {}", p.name, p.dim, 2 * n + 1)));
            }
        }
        Ok(State { n, pieces, next_core: 1 })
    }

    fn locate(&self, id: &str) -> Option<usize> {
        self.pieces.iter().position(|p| p.feature(id).is_some())
    }

    fn locate_boundary(&self, id: &str) -> Option<usize> {
        self.pieces.iter().position(|p| p.boundary.iter().any(|b| b.id == id))
    }
}

fn illegal(s: String) -> Error {
    Error::IllegalStep(s)
}

fn circle_in<'a>(st: &'a State, id: &str) -> Result<(usize, &'a Feature)> {
    let i = st.locate(id).ok_or_else(|| illegal(format!("no feature `{id}`")))?;
    Ok((i, st.pieces[i].feature(id).expect("located")))
}

/// One rewrite. Returns the new state and the audit log.
pub fn apply_step(state: &State, step: &SurgeryStep) -> Result<(State, Vec<String>)> {
    let mut st = state.clone();
    let mut log = Vec::new();
    if let Some(op) = &step.operation {
        log.push(format!("{op}: {}", step.kind_name()));
    }
    match &step.kind {
        StepKind::PushOffIsotropic { circle } => {
            let (i, f) = circle_in(&st, circle)?;
            if f.kind != FeatureKind::TransverseCircle {
                return Err(illegal(format!("`{circle}` is not a transverse circle")));
            }
            let id = format!("L({circle})");
            let mut nf = f.clone();
            nf.id = id.clone();
            nf.kind = FeatureKind::IsotropicCircle { framing: format!("CSN({id})") };
            let p = &mut st.pieces[i];
            p.take_feature(circle);
            p.features.push(nf);
            log.push(format!("isotropic push-off {id} of {circle} in {}", p.name));
        }
        StepKind::PushOffTransverse { circle } => {
            let (i, f) = circle_in(&st, circle)?;
            if !matches!(f.kind, FeatureKind::IsotropicCircle { .. }) {
                return Err(illegal(format!("`{circle}` is not an isotropic circle")));
            }
            let id = format!("T({circle})");
            let mut nf = f.clone();
            nf.id = id.clone();
            nf.kind = FeatureKind::TransverseCircle;
            let p = &mut st.pieces[i];
            p.take_feature(circle);
            p.features.push(nf);
            log.push(format!("transverse push-off {id} of {circle} in {}", p.name));
        }
        StepKind::XiRoundToConvex { hypersurface } => {
            let dividing = standard_dividing(st.n);
            let id = format!("~{hypersurface}");
            if let Some(i) = st.locate_boundary(hypersurface) {
                let p = &mut st.pieces[i];
                let b = p.boundary.iter().find(|b| b.id == *hypersurface).expect("located");
                if b.model != BoundaryModel::XiRoundSphereTimesCircle {
                    return Err(illegal(format!("boundary `{hypersurface}` is not xi-round")));
                }
                p.features.push(Feature::new(
                    &id,
                    FeatureKind::ConvexHypersurface { dividing: dividing.clone(), parallel_to: Some(hypersurface.clone()) },
                ));
                log.push(format!("convex {id} parallel to boundary {hypersurface}, dividing {dividing}"));
            } else {
                let (i, f) = circle_in(&st, hypersurface)?;
                if f.kind != FeatureKind::XiRoundHypersurface {
                    return Err(illegal(format!("`{hypersurface}` is not a xi-round hypersurface")));
                }
                let p = &mut st.pieces[i];
                p.take_feature(hypersurface);
                p.features.push(Feature::new(&id, FeatureKind::ConvexHypersurface { dividing: dividing.clone(), parallel_to: None }));
                log.push(format!("perturbed {hypersurface} to convex {id}, dividing {dividing}"));
            }
        }
        StepKind::RoundIndex2n { hypersurface, framing } => {
            if framing.is_empty() {
                return Err(illegal(format!("index 2n along `{hypersurface}` without a framing label")));
            }
            let (i, f) = circle_in(&st, hypersurface)
                .map_err(|_| illegal(format!("index 2n needs a convex hypersurface; `{hypersurface}` not found")))?;
            let FeatureKind::ConvexHypersurface { dividing, parallel_to } = f.kind.clone() else {
                return Err(illegal(format!("index 2n needs a convex hypersurface; `{hypersurface}` has no dividing tag")));
            };
            let want = standard_dividing(st.n);
            if dividing != want {
                return Err(illegal(format!("`{hypersurface}` has dividing set {dividing}, needs {want}")));
            }
            let p = &mut st.pieces[i];
            p.take_feature(hypersurface);
            match parallel_to {
                Some(b) => {
                    let comp = p.boundary.iter_mut().find(|c| c.id == b).expect("parallel boundary");
                    comp.model = BoundaryModel::Closed;
                    let owner = comp.owner.clone();
                    log.push(format!("removed collar of {hypersurface} with boundary {b}; capped by a standard tube (framing {framing})"));
                    if let Some(ins) = p.inserted.iter().find(|m| m.name == owner && m.kind == ModelKind::LutzTube) {
                        p.tags.insert(MODEL_TUBE_TAG.into());
                        log.push(format!("{} left in {}", ins.name, p.manifold));
                    }
                }
                None => {
                    let k = st.next_core;
                    st.next_core += 2;
                    let p = &mut st.pieces[i];
                    for j in [k, k + 1] {
                        let id = format!("L{j}");
                        let mut c = Feature::new(&id, FeatureKind::IsotropicCircle { framing: format!("CSN({id})") });
                        c.cut = Some(hypersurface.clone());
                        p.features.push(c);
                    }
                    p.open_cuts.push(hypersurface.clone());
                    log.push(format!(
                        "removed invariant neighborhood of {hypersurface}; glued standard tubes around L{k}, L{} (framing {framing})",
                        k + 1
                    ));
                }
            }
        }
        StepKind::RoundIndex1 { a, b, framings, assumption } => {
            if a == b {
                return Err(illegal(format!("index 1 needs two distinct circles, got `{a}` twice")));
            }
            let (ia, fa) = circle_in(&st, a)?;
            let (ib, fb) = circle_in(&st, b)?;
            for (f, want) in [(fa, &framings.0), (fb, &framings.1)] {
                match &f.kind {
                    FeatureKind::IsotropicCircle { framing } if framing == want => {}
                    FeatureKind::IsotropicCircle { framing } => {
                        return Err(illegal(format!("framing of `{}` is {framing}, step gives {want}", f.id)))
                    }
                    _ => return Err(illegal(format!("`{}` is not an isotropic circle", f.id))),
                }
            }
            let (fa, fb) = (fa.clone(), fb.clone());
            if let Some(s) = assumption {
                log.push(format!("framing assumption: {s}"));
            }
            let host = if ia == ib {
                st.pieces[ia].take_feature(a);
                st.pieces[ia].take_feature(b);
                ia
            } else {
                let (h, g) = if st.pieces[ib].model.is_none() && st.pieces[ia].model.is_some() { (ib, ia) } else { (ia, ib) };
                let guest = st.pieces[g].clone();
                let mut hp = st.pieces[h].clone();
                hp.take_feature(if h == ia { a } else { b });
                let mut guest_features = guest.features.clone();
                guest_features.retain(|f| f.id != *a && f.id != *b);
                hp.features.extend(guest_features);
                hp.boundary.extend(guest.boundary.iter().cloned());
                hp.open_cuts.extend(guest.open_cuts.iter().cloned());
                hp.tags.extend(guest.tags.iter().cloned());
                hp.inserted.extend(guest.inserted.iter().cloned());
                match guest.model {
                    Some(kind) => hp.inserted.push(Inserted { name: guest.name.clone(), kind, cores_used: 0 }),
                    None => hp.manifold = format!("{} # {}", hp.manifold, guest.manifold),
                }
                hp.name = format!("{} +[{a},{b}] {}", st.pieces[h].name, guest.name);
                log.push(format!("merged {} into {}", guest.name, st.pieces[h].name));
                st.pieces[h] = hp;
                st.pieces.remove(g);
                if g < h {
                    h - 1
                } else {
                    h
                }
            };
            let p = &mut st.pieces[host];
            log.push(format!(
                "removed standard neighborhoods of {a}, {b}; glued invariant neighborhood of convex N({a},{b}) with dividing {}",
                standard_dividing(st.n)
            ));
            p.features.push(Feature::new(
                &format!("N({a},{b})"),
                FeatureKind::ConvexHypersurface { dividing: standard_dividing(st.n), parallel_to: None },
            ));
            for f in [&fa, &fb] {
                if let Some(m) = &f.core_of {
                    if let Some(ins) = p.inserted.iter_mut().find(|x| x.name == *m) {
                        ins.cores_used += 1;
                    }
                }
            }
            let closed: Vec<String> = [&fa, &fb].iter().filter_map(|f| f.cut.clone()).collect();
            for c in &closed {
                let others_left = p.features.iter().any(|f| f.cut.as_deref() == Some(c.as_str()));
                if !others_left {
                    p.open_cuts.retain(|x| x != c);
                    log.push(format!("cut along {c} closed; underlying manifold is {} again", p.manifold));
                }
            }
            if !closed.is_empty() {
                for ins in p.inserted.iter().filter(|m| m.kind == ModelKind::Double && m.cores_used >= 2) {
                    if p.tags.insert(WIDE_GIROUX_TAG.into()) {
                        log.push(format!("{} blown up along its second core; left as a {WIDE_GIROUX_TAG}", ins.name));
                    }
                }
            }
        }
    }
    Ok((st, log))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub step: SurgeryStep,
    pub log: Vec<String>,
    pub after: Vec<PieceDescriptor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub recipe: String,
    pub n: usize,
    pub initial: Vec<PieceDescriptor>,
    pub entries: Vec<TraceEntry>,
    pub final_state: Vec<PieceDescriptor>,
    pub illegal_steps: usize,
    pub expected_tags: Vec<String>,
    pub final_ok: bool,
}

/// Replays `steps` from `state`, stopping at the first illegal step.
pub fn replay(state: &State, steps: &[SurgeryStep]) -> Result<(State, Vec<TraceEntry>)> {
    let mut st = state.clone();
    let mut entries = Vec::new();
    for s in steps {
        let (next, log) = apply_step(&st, s)?;
        entries.push(TraceEntry { step: s.clone(), log, after: next.pieces.clone() });
        st = next;
    }
    Ok((st, entries))
}

pub const RECIPES: [&str; 2] = ["twist-along-circle", "twist-along-hypersurface"];

fn tube(n: usize, name: &str, kind: ModelKind) -> PieceDescriptor {
    PieceDescriptor::new(name, n, &format!("D^{}xS^1", 2 * n)).with_model(kind)
}

/// Initial pieces and the step list of a recipe.
pub fn recipe(name: &str, n: usize) -> Result<(State, Vec<SurgeryStep>, &'static str)> {
    use StepKind::*;
    let s = |x: &str| String::from(x);
    match name {
        "twist-along-circle" => {
            let m = PieceDescriptor::new("M", n, "M").with_feature(Feature::new("gamma", FeatureKind::TransverseCircle));
            let mlt = tube(n, "MLT", ModelKind::LutzTube)
                .with_boundary("dMLT", BoundaryModel::XiRoundSphereTimesCircle)
                .with_feature(Feature::core("Gamma", "MLT"));
            let steps = alloc::vec![
                SurgeryStep::new(PushOffIsotropic { circle: s("gamma") }),
                SurgeryStep::new(PushOffIsotropic { circle: s("Gamma") }),
                SurgeryStep::labelled(
                    RoundIndex1 {
                        a: s("L(gamma)"),
                        b: s("L(Gamma)"),
                        framings: (s("CSN(L(gamma))"), s("CSN(L(Gamma))")),
                        assumption: None,
                    },
                    "Operation 1",
                ),
                SurgeryStep::new(XiRoundToConvex { hypersurface: s("dMLT") }),
                SurgeryStep::labelled(RoundIndex2n { hypersurface: s("~dMLT"), framing: s("recovering") }, "Operation 2"),
            ];
            Ok((State::new(n, alloc::vec![m, mlt])?, steps, MODEL_TUBE_TAG))
        }
        "twist-along-hypersurface" => {
            let m = PieceDescriptor::new("M", n, "M").with_feature(Feature::new("H", FeatureKind::XiRoundHypersurface));
            let du = PieceDescriptor::new("DU", n, &format!("S^{}xS^1", 2 * n))
                .with_model(ModelKind::Double)
                .with_feature(Feature::core("l1", "DU"))
                .with_feature(Feature::core("l2", "DU"));
            let steps = alloc::vec![
                SurgeryStep::new(XiRoundToConvex { hypersurface: s("H") }),
                SurgeryStep::labelled(RoundIndex2n { hypersurface: s("~H"), framing: s("standard") }, "Operation 1"),
                SurgeryStep::new(PushOffIsotropic { circle: s("l1") }),
                SurgeryStep::labelled(
                    RoundIndex1 { a: s("L1"), b: s("L(l1)"), framings: (s("CSN(L1)"), s("CSN(L(l1))")), assumption: None },
                    "Operation 2",
                ),
                SurgeryStep::new(PushOffIsotropic { circle: s("l2") }),
                SurgeryStep::labelled(
                    RoundIndex1 {
                        a: s("L(l2)"),
                        b: s("L2"),
                        framings: (s("CSN(L(l2))"), s("CSN(L2)")),
                        assumption: Some(s(
                            "CSN(L(l2)) trivialized as CSN(L(l1)) = CSN(L1); CSN(L2) taken to match CSN(L1) (not computed)",
                        )),
                    },
                    "Operation 3",
                ),
            ];
            Ok((State::new(n, alloc::vec![m, du])?, steps, WIDE_GIROUX_TAG))
        }
        other => Err(Error::BadAssignment(format!("unknown recipe `{other}`"))),
    }
}

/// Step kinds of each recipe, in order.
pub fn expected_kinds(name: &str) -> Option<&'static [&'static str]> {
    match name {
        "twist-along-circle" => {
            Some(&["push-off-isotropic", "push-off-isotropic", "round-index-1", "xi-round-to-convex", "round-index-2n"])
        }
        "twist-along-hypersurface" => Some(&[
            "xi-round-to-convex",
            "round-index-2n",
            "push-off-isotropic",
            "round-index-1",
            "push-off-isotropic",
            "round-index-1",
        ]),
        _ => None,
    }
}

pub fn run_recipe(name: &str, n: usize) -> Result<Trace> {
    let (st, steps, tag) = recipe(name, n)?;
    let (fin, entries) = replay(&st, &steps)?;
    let kinds_ok = expected_kinds(name)
        .is_some_and(|k| k.len() == entries.len() && k.iter().zip(&entries).all(|(k, e)| *k == e.step.kind_name()));
    let final_ok = kinds_ok
        && fin.pieces.len() == 1
        && fin.pieces.iter().all(|p| {
            p.manifold == "M" && p.is_closed() && p.open_cuts.is_empty() && p.tags.iter().map(|t| t.as_str()).eq([tag])
        });
    Ok(Trace {
        recipe: name.to_string(),
        n,
        initial: st.pieces,
        entries,
        final_state: fin.pieces,
        illegal_steps: 0,
        expected_tags: alloc::vec![tag.to_string()],
        final_ok,
    })
}
