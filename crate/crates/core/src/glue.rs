//! Composable face pairs, glued schemes and the functors relating their
//! order groupoids.
//!
//! For `F ◁ G` write `τ_F = a·r·b` and `σ_G = c·r·d` with `r` the shared
//! segment. The pair pastes to a single face exactly when `r` is connected,
//! one of `a`, `c` is empty and one of `b`, `d` is empty. The merged face then
//! runs from `c·σ_F·d` down to `a·τ_G·b`, and its label is the vertical
//! composite `(b ∘ α_G ∘ a)·(d ∘ α_F ∘ c)`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::ids::{EdgeId, FaceId, GenName, Path, MERGE_SEPARATOR};
use crate::orders::{connect_with, enumerate_with, face_relations, CompOrder, FaceRelations, GenMove};
use crate::scheme::{PastingScheme, RawFace, SchemeError};
use crate::terms::{
    eval_order, swaps_from, Decl3, FaceLabel, LabelError, Labelling, Move, MoveWord, PairFragment, Pasted, TermError,
    WhiskCell,
};

/// The rows of the pasting table, by which endpoints of the merged face lie
/// on the shared segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// `s_F`, `t_F` on the segment: `α_G·(j∘α_F∘i)`.
    Shape1,
    /// `s_F`, `t_G` on the segment: `(j∘α_G)·(α_F∘i)`.
    Shape2,
    /// `s_G`, `t_F` on the segment: `(α_G∘i)·(j∘α_F)`.
    Shape3,
    /// `s_G`, `t_G` on the segment: `(j∘α_G∘i)·α_F`.
    Shape4,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShapeCase {
    pub shape: Shape,
    pub i: Path,
    pub j: Path,
    pub overlap: Path,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Composable {
    /// Neither face is below the other; several compositions exist.
    CaseA,
    CaseB(ShapeCase),
    NotComposable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlueError {
    #[error("UnknownFace: `{0}`")]
    UnknownFace(FaceId),
    #[error("SameFace: cannot glue `{0}` to itself")]
    SameFace(FaceId),
    #[error("DisconnectedOverlap: shared edges of `{f}` and `{g}` do not form one segment")]
    DisconnectedOverlap { f: FaceId, g: FaceId },
    #[error("NotCaseB: `{f}` and `{g}` are {found}")]
    NotCaseB { f: FaceId, g: FaceId, found: &'static str },
    #[error("NotCaseA: `{f}` and `{g}` have a unique composition")]
    NotCaseA { f: FaceId, g: FaceId },
    #[error("UnsupportedConfiguration: {0}")]
    UnsupportedConfiguration(String),
    #[error("PairsNotDisjoint: {0}")]
    PairsNotDisjoint(String),
    #[error("IdCollision: `{0}` already names an element of the scheme")]
    IdCollision(String),
    #[error("InvalidOrder: {0}")]
    InvalidOrder(String),
    #[error("InvalidMove: {0}")]
    InvalidMove(String),
    #[error("glued scheme fails validation: {0:?}")]
    Invalid(Vec<SchemeError>),
    #[error("LabelOnMergedFace: 3-cell `{cell}` targets `{face}`, which no longer exists after gluing")]
    LabelOnMergedFace { cell: String, face: FaceId },
    #[error("{0}")]
    Term(#[from] TermError),
    #[error("{0}")]
    Label(String),
}

impl From<LabelError> for GlueError {
    fn from(e: LabelError) -> Self {
        match e {
            LabelError::LabelOnMergedFace { cell, face } => GlueError::LabelOnMergedFace {
                cell: cell.to_string(),
                face,
            },
            other => GlueError::Label(other.to_string()),
        }
    }
}

/// Boundary bookkeeping for a composable pair `F ⋖ G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MergeGeometry {
    pub f: FaceId,
    pub g: FaceId,
    pub shape: Shape,
    pub overlap: Path,
    pub a: Path,
    pub b: Path,
    pub c: Path,
    pub d: Path,
    /// `σ_{F#G} = c·σ_F·d`.
    pub top: Path,
    /// `τ_{F#G} = a·τ_G·b`.
    pub bottom: Path,
}

impl MergeGeometry {
    pub fn fragment(&self) -> PairFragment {
        PairFragment {
            upper_pre: self.c.clone(),
            upper_post: self.d.clone(),
            lower_pre: self.a.clone(),
            lower_post: self.b.clone(),
        }
    }

    pub fn case(&self) -> ShapeCase {
        let (i, j) = match self.shape {
            Shape::Shape1 => (&self.c, &self.d),
            Shape::Shape2 => (&self.c, &self.b),
            Shape::Shape3 => (&self.a, &self.d),
            Shape::Shape4 => (&self.a, &self.b),
        };
        ShapeCase {
            shape: self.shape,
            i: i.clone(),
            j: j.clone(),
            overlap: self.overlap.clone(),
        }
    }

    pub fn merged_id(&self) -> FaceId {
        merged_id(&self.f, &self.g)
    }
}

pub fn merged_id(f: &FaceId, g: &FaceId) -> FaceId {
    FaceId::new(format!("{f}{MERGE_SEPARATOR}{g}"))
}

fn check_pair(scheme: &PastingScheme, f: &FaceId, g: &FaceId) -> Result<(), GlueError> {
    for x in [f, g] {
        if !scheme.faces().contains_key(x) {
            return Err(GlueError::UnknownFace(x.clone()));
        }
    }
    if f == g {
        return Err(GlueError::SameFace(f.clone()));
    }
    Ok(())
}

/// Whether some composition order has `F` immediately before `G` (brute force).
pub fn adjacent_order_exists(scheme: &PastingScheme, f: &FaceId, g: &FaceId) -> Result<bool, GlueError> {
    check_pair(scheme, f, g)?;
    let rel = face_relations(scheme);
    Ok(enumerate_with(scheme, &rel).iter().any(|o| {
        o.faces.windows(2).any(|w| w[0] == *f && w[1] == *g)
    }))
}

/// Splits `τ_F` and `σ_G` around their shared edges.
fn split_overlap(scheme: &PastingScheme, f: &FaceId, g: &FaceId) -> Result<[Path; 5], GlueError> {
    let tau = &scheme.faces()[f].bottom;
    let sigma = &scheme.faces()[g].top;
    let shared: BTreeSet<&EdgeId> = sigma.iter().filter(|e| tau.contains(e)).collect();
    let disconnected = || GlueError::DisconnectedOverlap {
        f: f.clone(),
        g: g.clone(),
    };
    let span = |p: &Path| -> Result<(usize, usize), GlueError> {
        let hits: Vec<usize> = (0..p.len()).filter(|&k| shared.contains(&p[k])).collect();
        let (lo, hi) = (hits[0], hits[hits.len() - 1] + 1);
        if hi - lo != hits.len() {
            return Err(disconnected());
        }
        Ok((lo, hi))
    };
    let (tl, th) = span(tau)?;
    let (sl, sh) = span(sigma)?;
    if tau[tl..th] != sigma[sl..sh] {
        return Err(disconnected());
    }
    Ok([
        tau[tl..th].to_vec(),
        tau[..tl].to_vec(),
        tau[th..].to_vec(),
        sigma[..sl].to_vec(),
        sigma[sh..].to_vec(),
    ])
}

/// The trichotomy for a face pair, computed from the relations.
pub fn classify_composable(scheme: &PastingScheme, f: &FaceId, g: &FaceId) -> Result<Composable, GlueError> {
    check_pair(scheme, f, g)?;
    let rel = face_relations(scheme);
    classify_with(scheme, &rel, f, g)
}

pub fn classify_with(
    scheme: &PastingScheme,
    rel: &FaceRelations,
    f: &FaceId,
    g: &FaceId,
) -> Result<Composable, GlueError> {
    if !rel.comparable(f, g) {
        return Ok(Composable::CaseA);
    }
    if rel.tri_t(g, f) {
        return Ok(Composable::NotComposable);
    }
    let between = scheme
        .faces()
        .keys()
        .any(|u| rel.tri_t(f, u) && rel.tri_t(u, g));
    if between || !rel.tri(f, g) {
        return Ok(Composable::NotComposable);
    }
    match geometry_unchecked(scheme, f, g)? {
        Some(m) => Ok(Composable::CaseB(m.case())),
        None => Ok(Composable::NotComposable),
    }
}

fn geometry_unchecked(scheme: &PastingScheme, f: &FaceId, g: &FaceId) -> Result<Option<MergeGeometry>, GlueError> {
    let [overlap, a, b, c, d] = split_overlap(scheme, f, g)?;
    let (sf_in, tf_in, sg_in, tg_in) = (a.is_empty(), b.is_empty(), c.is_empty(), d.is_empty());
    let shape = match ((sf_in, sg_in), (tf_in, tg_in)) {
        ((true, _), (true, _)) => Shape::Shape1,
        ((true, _), (false, true)) => Shape::Shape2,
        ((false, true), (true, _)) => Shape::Shape3,
        ((false, true), (false, true)) => Shape::Shape4,
        _ => return Ok(None),
    };
    let faces = scheme.faces();
    let top = [c.as_slice(), &faces[f].top, &d].concat();
    let bottom = [a.as_slice(), &faces[g].bottom, &b].concat();
    Ok(Some(MergeGeometry {
        f: f.clone(),
        g: g.clone(),
        shape,
        overlap,
        a,
        b,
        c,
        d,
        top,
        bottom,
    }))
}

/// Geometry of a pair that must be composable in the unique-composition case.
pub fn merge_geometry(scheme: &PastingScheme, f: &FaceId, g: &FaceId) -> Result<MergeGeometry, GlueError> {
    match classify_composable(scheme, f, g)? {
        Composable::CaseB(_) => Ok(geometry_unchecked(scheme, f, g)?.expect("classified as CaseB")),
        Composable::CaseA => Err(GlueError::NotCaseB {
            f: f.clone(),
            g: g.clone(),
            found: "in case A",
        }),
        Composable::NotComposable => Err(GlueError::NotCaseB {
            f: f.clone(),
            g: g.clone(),
            found: "not composable",
        }),
    }
}

/// `G^{FG}` with the data linking it back to the original scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedScheme {
    pub glued: PastingScheme,
    pub merged: FaceId,
    pub origin_f: FaceId,
    pub origin_g: FaceId,
    pub shape: ShapeCase,
    pub geometry: MergeGeometry,
    pub origin: PastingScheme,
}

pub fn build_glued(scheme: &PastingScheme, f: &FaceId, g: &FaceId) -> Result<GluedScheme, GlueError> {
    let m = merge_geometry(scheme, f, g)?;
    let merged = m.merged_id();
    if scheme.faces().contains_key(&merged) {
        return Err(GlueError::IdCollision(merged.to_string()));
    }
    let faces = scheme.faces();
    let inner_f = faces[f].interior_vertices(scheme);
    let inner_g = faces[g].interior_vertices(scheme);
    let drop_v: BTreeSet<_> = inner_f.intersection(&inner_g).cloned().collect();
    let drop_e: BTreeSet<_> = m.overlap.iter().cloned().collect();

    let mut raw = scheme.to_raw();
    raw.vertices.retain(|v| !drop_v.contains(v));
    raw.edges.retain(|e| !drop_e.contains(&e.id));
    raw.faces.retain(|x| x.id != *f && x.id != *g);
    raw.faces.push(RawFace {
        id: merged.clone(),
        top: m.top.clone(),
        bottom: m.bottom.clone(),
    });
    raw.faces.sort_by(|x, y| x.id.cmp(&y.id));
    let glued = PastingScheme::validate(&raw).map_err(GlueError::Invalid)?;
    debug_assert_eq!(glued.faces().len() + 1, scheme.faces().len());
    Ok(GluedScheme {
        glued,
        merged,
        origin_f: f.clone(),
        origin_g: g.clone(),
        shape: m.case(),
        geometry: m,
        origin: scheme.clone(),
    })
}

/// `S_FG` on objects: `F#G` expands to `F, G`.
pub fn s_functor_ob(g: &GluedScheme, o: &CompOrder) -> Result<CompOrder, GlueError> {
    let rel = face_relations(&g.glued);
    o.check(&g.glued, &rel)
        .map_err(|e| GlueError::InvalidOrder(e.to_string()))?;
    let out = expand(g, o);
    debug_assert!(out.check(&g.origin, &face_relations(&g.origin)).is_ok());
    Ok(out)
}

fn expand(g: &GluedScheme, o: &CompOrder) -> CompOrder {
    let mut faces = Vec::with_capacity(o.len() + 1);
    for x in &o.faces {
        if *x == g.merged {
            faces.push(g.origin_f.clone());
            faces.push(g.origin_g.clone());
        } else {
            faces.push(x.clone());
        }
    }
    CompOrder::new(faces)
}

/// `S_FG` on generating moves.
pub fn s_functor_move(g: &GluedScheme, m: &GenMove) -> Result<Vec<GenMove>, GlueError> {
    let rel = face_relations(&g.glued);
    if m.index + 1 >= m.at.len() || rel.comparable(&m.at.faces[m.index], &m.at.faces[m.index + 1]) {
        return Err(GlueError::InvalidMove(format!("index {} on [{}]", m.index, m.at)));
    }
    let pos = m
        .at
        .position(&g.merged)
        .ok_or_else(|| GlueError::InvalidOrder(format!("[{}] lacks `{}`", m.at, g.merged)))?;
    let start = s_functor_ob(g, &m.at)?;
    let i = m.index;
    let indices = if i == pos {
        vec![i + 1, i]
    } else if i + 1 == pos {
        vec![i, i + 1]
    } else if i < pos {
        vec![i]
    } else {
        vec![i + 1]
    };
    let mut at = start;
    let mut out = Vec::new();
    for index in indices {
        let mv = GenMove { at: at.clone(), index };
        at = mv.target();
        out.push(mv);
    }
    Ok(out)
}

/// Ways of choosing a pseudo-inverse of `S_FG`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JChoice {
    /// Faces between `F` and `G` that lie below-before `G` move ahead of `F`;
    /// the rest move behind `G`.
    Canonical,
    /// Faces between `F` and `G` that lie after `F` move behind `G`; the rest
    /// move ahead of `F`.
    ShiftUpper,
    /// The constant choice: the first enumerated order with `F, G` adjacent.
    FirstAdjacent,
}

impl JChoice {
    pub const ALL: [JChoice; 3] = [JChoice::Canonical, JChoice::ShiftUpper, JChoice::FirstAdjacent];
}

impl fmt::Display for JChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An order of the original scheme with `F, G` adjacent, chosen for `o`.
pub fn adjacent_representative(g: &GluedScheme, o: &CompOrder, choice: JChoice) -> Result<CompOrder, GlueError> {
    let rel = face_relations(&g.origin);
    o.check(&g.origin, &rel)
        .map_err(|e| GlueError::InvalidOrder(e.to_string()))?;
    let (f, gg) = (&g.origin_f, &g.origin_g);
    if choice == JChoice::FirstAdjacent {
        return Ok(enumerate_with(&g.origin, &rel)
            .into_iter()
            .find(|x| x.faces.windows(2).any(|w| w[0] == *f && w[1] == *gg))
            .expect("composable pair has an adjacent order"));
    }
    let pf = o.position(f).expect("face present");
    let pg = o.position(gg).expect("face present");
    let middle = &o.faces[pf + 1..pg];
    let ahead = |u: &FaceId| match choice {
        JChoice::Canonical => rel.tri_t(u, gg),
        _ => !rel.tri_t(f, u),
    };
    let mut faces = o.faces[..pf].to_vec();
    faces.extend(middle.iter().filter(|u| ahead(u)).cloned());
    faces.push(f.clone());
    faces.push(gg.clone());
    faces.extend(middle.iter().filter(|u| !ahead(u)).cloned());
    faces.extend_from_slice(&o.faces[pg + 1..]);
    let out = CompOrder::new(faces);
    debug_assert!(out.check(&g.origin, &rel).is_ok());
    Ok(out)
}

/// `J_FG`: a pseudo-inverse of `S_FG` on objects.
pub fn pseudo_inverse(g: &GluedScheme, o: &CompOrder, choice: JChoice) -> Result<CompOrder, GlueError> {
    let adj = adjacent_representative(g, o, choice)?;
    Ok(contract(g, &adj))
}

/// Replaces the adjacent `F, G` by `F#G`.
pub fn contract(g: &GluedScheme, o: &CompOrder) -> CompOrder {
    let mut faces = Vec::with_capacity(o.len());
    let mut k = 0;
    while k < o.len() {
        if o.faces[k] == g.origin_f && o.faces.get(k + 1) == Some(&g.origin_g) {
            faces.push(g.merged.clone());
            k += 2;
        } else {
            faces.push(o.faces[k].clone());
            k += 1;
        }
    }
    CompOrder::new(faces)
}

/// The two whiskered cells of a row of the pasting table, relative to the
/// merged region: the upper one (`α_F`) first.
pub fn paste_label(case: &ShapeCase, alpha_f: &GenName, alpha_g: &GenName) -> [WhiskCell; 2] {
    let (i, j) = (case.i.clone(), case.j.clone());
    let e = Vec::new;
    let (upper, lower) = match case.shape {
        Shape::Shape1 => ((i, j), (e(), e())),
        Shape::Shape2 => ((i, e()), (e(), j)),
        Shape::Shape3 => ((e(), j), (i, e())),
        Shape::Shape4 => ((e(), e()), (i, j)),
    };
    [
        WhiskCell::new(upper.0, alpha_f.clone(), upper.1),
        WhiskCell::new(lower.0, alpha_g.clone(), lower.1),
    ]
}

/// The table formula, e.g. `(j∘αG)·(αF∘i)`, with the stubs spelled out.
pub fn paste_formula(case: &ShapeCase, alpha_f: &str, alpha_g: &str) -> String {
    let [up, low] = paste_label(case, &GenName::new(alpha_f), &GenName::new(alpha_g));
    let render = |c: &WhiskCell| {
        let mut parts = Vec::new();
        if !c.post.is_empty() {
            parts.push(crate::ids::compose_notation(&c.post));
        }
        parts.push(c.gen.to_string());
        if !c.pre.is_empty() {
            parts.push(crate::ids::compose_notation(&c.pre));
        }
        let s = parts.join("∘");
        if parts.len() > 1 {
            format!("({s})")
        } else {
            s
        }
    };
    format!("{}·{}", render(&low), render(&up))
}

/// `L_FG`: untouched faces keep their labels, `F#G` carries the pasted pair.
pub fn glued_labelling(lab: &Labelling, g: &GluedScheme) -> Result<Labelling, GlueError> {
    if lab.scheme != g.origin {
        return Err(GlueError::Label("labelling is not on the glued scheme's origin".into()));
    }
    let mut labels = lab.labels.clone();
    let upper = labels.remove(&g.origin_f).expect("labelled face");
    let lower = labels.remove(&g.origin_g).expect("labelled face");
    labels.insert(
        g.merged.clone(),
        FaceLabel::Pasted(Box::new(Pasted {
            shape: g.geometry.shape,
            fragment: g.geometry.fragment(),
            upper,
            lower,
        })),
    );
    Ok(Labelling {
        scheme: g.glued.clone(),
        labels,
        sig: lab.sig.clone(),
    })
}

/// `L_FG^{α′}`: the merged face labelled by the target of a two-to-one cell.
pub fn glued_labelling_alt(lab: &Labelling, g: &GluedScheme, cell: &crate::ids::CellName) -> Result<Labelling, GlueError> {
    let target = match lab.sig.cells.get(cell) {
        Some(Decl3::TwoToOne { faces, target, .. }) if *faces == (g.origin_f.clone(), g.origin_g.clone()) => target,
        _ => {
            return Err(GlueError::Label(format!(
                "`{cell}` is not a two-to-one cell on ({}, {})",
                g.origin_f, g.origin_g
            )))
        }
    };
    let mut out = glued_labelling(lab, g)?;
    out.labels.insert(g.merged.clone(), FaceLabel::Gen(target.clone()));
    Ok(out)
}

/// `(L_FG)^{α′}` for a one-to-one cell; fails when its face was merged.
pub fn retarget_glued(lab_fg: &Labelling, cell: &crate::ids::CellName) -> Result<Labelling, GlueError> {
    Ok(lab_fg.retarget(cell)?)
}

/// The component at `o` of the transformation induced by a two-to-one cell:
/// the interchanger to the adjacent representative, then the cell itself.
pub fn induced_nat2(
    lab: &Labelling,
    g: &GluedScheme,
    cell: &crate::ids::CellName,
    o: &CompOrder,
    choice: JChoice,
) -> Result<MoveWord, GlueError> {
    match lab.sig.cells.get(cell) {
        Some(Decl3::TwoToOne { faces, .. }) if *faces == (g.origin_f.clone(), g.origin_g.clone()) => {}
        _ => return Err(GlueError::Label(format!("`{cell}` is not a two-to-one cell on this pair"))),
    }
    let rel = face_relations(&g.origin);
    let adj = adjacent_representative(g, o, choice)?;
    let path = connect_with(&rel, o, &adj);
    let source = eval_order(lab, o)?;
    let indices: Vec<usize> = path.iter().map(|m| m.index).collect();
    let (mut moves, _) = swaps_from(&lab.sig, &source, &indices)?;
    let pos = adj.position(&g.origin_f).expect("face present");
    moves.push(Move::gen3_pair(lab.cell_index(&adj, pos), cell.clone()));
    Ok(MoveWord { source, moves })
}

#[cfg(test)]
mod tests;
