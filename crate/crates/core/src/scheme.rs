//! Pasting schemes as combinatorial plane DAGs.
//!
//! Planarity is not checked geometrically. A scheme is accepted when its
//! explicit face boundaries cover every edge exactly once from above and once
//! from below (the outer top and bottom paths standing in for the unbounded
//! region), the graph is acyclic with a unique source and sink, and the Euler
//! relation `V - E + (F + 1) = 2` holds.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ids::{join_ids, EdgeId, FaceId, Path, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEdge {
    pub id: EdgeId,
    pub src: VertexId,
    pub tgt: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFace {
    pub id: FaceId,
    pub top: Path,
    pub bottom: Path,
}

/// The on-disk scheme document, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScheme {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<RawEdge>,
    pub faces: Vec<RawFace>,
    pub top: Path,
    pub bottom: Path,
}

impl RawScheme {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scheme serialization cannot fail")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub src: VertexId,
    pub tgt: VertexId,
}

/// An interior face with its uppermost (`top`) and lowermost (`bottom`)
/// boundary paths, both running from `src` to `tgt`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub id: FaceId,
    pub top: Path,
    pub bottom: Path,
    pub src: VertexId,
    pub tgt: VertexId,
}

impl Face {
    /// All vertices on the boundary, `src` and `tgt` included.
    pub fn vertices<'a>(&'a self, scheme: &'a PastingScheme) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for e in self.top.iter().chain(&self.bottom) {
            let edge = &scheme.edges[e];
            out.insert(edge.src.clone());
            out.insert(edge.tgt.clone());
        }
        out
    }

    /// Boundary vertices other than `src` and `tgt`.
    pub fn interior_vertices(&self, scheme: &PastingScheme) -> BTreeSet<VertexId> {
        let mut vs = self.vertices(scheme);
        vs.remove(&self.src);
        vs.remove(&self.tgt);
        vs
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.top.iter().chain(&self.bottom).cloned().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// The region directly above an edge.
    Above,
    /// The region directly below an edge.
    Below,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Above => f.write_str("above"),
            Role::Below => f.write_str("below"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("DuplicateId: {kind} id `{id}` declared more than once")]
    DuplicateId { kind: &'static str, id: String },
    #[error("UnknownVertex: edge `{edge}` references undeclared vertex `{vertex}`")]
    UnknownVertex { edge: EdgeId, vertex: VertexId },
    #[error("UnknownEdge: {owner} references undeclared edge `{edge}`")]
    UnknownEdge { owner: String, edge: EdgeId },
    #[error("CycleDetected: directed cycle through vertices [{}]", join_ids(.cycle))]
    CycleDetected { cycle: Vec<VertexId> },
    #[error("MultipleSources: vertices [{}] have no incoming edge", join_ids(.sources))]
    MultipleSources { sources: Vec<VertexId> },
    #[error("MultipleSinks: vertices [{}] have no outgoing edge", join_ids(.sinks))]
    MultipleSinks { sinks: Vec<VertexId> },
    #[error("MissingEndpoint: the scheme has no {role} vertex")]
    MissingEndpoint { role: &'static str },
    #[error("UnreachableVertex: `{vertex}` is not on a directed path from the source to the sink")]
    UnreachableVertex { vertex: VertexId },
    #[error("BadFaceBoundary: face `{face}`: {reason}")]
    BadFaceBoundary { face: FaceId, reason: String },
    #[error("BadOuterBoundary: {which} path: {reason}")]
    BadOuterBoundary { which: &'static str, reason: String },
    #[error("RolePartitionViolation: edge `{edge}` has {count} regions {role} it (expected exactly 1)")]
    RolePartitionViolation {
        edge: EdgeId,
        role: Role,
        count: usize,
    },
    #[error("EulerViolation: V - E + (F + 1) = {vertices} - {edges} + {regions} != 2")]
    EulerViolation {
        vertices: usize,
        edges: usize,
        regions: usize,
    },
}

impl SchemeError {
    /// Stable class name used in diagnostics and tests.
    pub fn class(&self) -> &'static str {
        match self {
            SchemeError::DuplicateId { .. } => "DuplicateId",
            SchemeError::UnknownVertex { .. } => "UnknownVertex",
            SchemeError::UnknownEdge { .. } => "UnknownEdge",
            SchemeError::CycleDetected { .. } => "CycleDetected",
            SchemeError::MultipleSources { .. } => "MultipleSources",
            SchemeError::MultipleSinks { .. } => "MultipleSinks",
            SchemeError::MissingEndpoint { .. } => "MissingEndpoint",
            SchemeError::UnreachableVertex { .. } => "UnreachableVertex",
            SchemeError::BadFaceBoundary { .. } => "BadFaceBoundary",
            SchemeError::BadOuterBoundary { .. } => "BadOuterBoundary",
            SchemeError::RolePartitionViolation { .. } => "RolePartitionViolation",
            SchemeError::EulerViolation { .. } => "EulerViolation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("UnknownFace: no face `{0}` in the scheme")]
pub struct UnknownFace(pub FaceId);

/// A validated pasting scheme. Immutable once built; all collections are
/// kept in lexicographic id order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PastingScheme {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
    faces: BTreeMap<FaceId, Face>,
    top: Path,
    bottom: Path,
    source: VertexId,
    sink: VertexId,
}

impl PastingScheme {
    pub fn validate(raw: &RawScheme) -> Result<Self, Vec<SchemeError>> {
        Validator::new(raw).run()
    }

    pub fn from_json(text: &str) -> Result<Self, SchemeLoadError> {
        let raw = RawScheme::from_json(text)?;
        Ok(Self::validate(&raw)?)
    }

    pub fn to_raw(&self) -> RawScheme {
        RawScheme {
            vertices: self.vertices.iter().cloned().collect(),
            edges: self
                .edges
                .values()
                .map(|e| RawEdge {
                    id: e.id.clone(),
                    src: e.src.clone(),
                    tgt: e.tgt.clone(),
                })
                .collect(),
            faces: self
                .faces
                .values()
                .map(|f| RawFace {
                    id: f.id.clone(),
                    top: f.top.clone(),
                    bottom: f.bottom.clone(),
                })
                .collect(),
            top: self.top.clone(),
            bottom: self.bottom.clone(),
        }
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<EdgeId, Edge> {
        &self.edges
    }

    pub fn faces(&self) -> &BTreeMap<FaceId, Face> {
        &self.faces
    }

    pub fn face_ids(&self) -> Vec<FaceId> {
        self.faces.keys().cloned().collect()
    }

    pub fn face(&self, id: &FaceId) -> Result<&Face, UnknownFace> {
        self.faces.get(id).ok_or_else(|| UnknownFace(id.clone()))
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges.get(id)
    }

    /// Top boundary `p`.
    pub fn top(&self) -> &Path {
        &self.top
    }

    /// Bottom boundary `q`.
    pub fn bottom(&self) -> &Path {
        &self.bottom
    }

    pub fn source(&self) -> &VertexId {
        &self.source
    }

    pub fn sink(&self) -> &VertexId {
        &self.sink
    }

    /// `(σ_F, τ_F, s_F, t_F)` for a face.
    pub fn face_paths(&self, f: &FaceId) -> Result<(&Path, &Path, &VertexId, &VertexId), UnknownFace> {
        let face = self.face(f)?;
        Ok((&face.top, &face.bottom, &face.src, &face.tgt))
    }

    /// Vertex sequence visited by a path (length `path.len() + 1`), or the
    /// single vertex `start` for the empty path.
    pub fn path_vertices(&self, path: &[EdgeId]) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(path.len() + 1);
        if let Some(first) = path.first() {
            out.push(self.edges[first].src.clone());
        }
        for e in path {
            out.push(self.edges[e].tgt.clone());
        }
        out
    }

    /// Whether a (possibly empty) directed path leads from `from` to `to`.
    pub fn reaches(&self, from: &VertexId, to: &VertexId) -> bool {
        if from == to {
            return true;
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(v) = queue.pop_front() {
            for e in self.edges.values().filter(|e| e.src == v) {
                if e.tgt == *to {
                    return true;
                }
                if seen.insert(e.tgt.clone()) {
                    queue.push_back(e.tgt.clone());
                }
            }
        }
        false
    }
}

#[derive(Debug, Error)]
pub enum SchemeLoadError {
    #[error("malformed scheme document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid scheme:\n{}", .0.iter().map(|e| format!("  {e}")).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<SchemeError>),
}

impl From<Vec<SchemeError>> for SchemeLoadError {
    fn from(errs: Vec<SchemeError>) -> Self {
        SchemeLoadError::Invalid(errs)
    }
}

struct Validator<'a> {
    raw: &'a RawScheme,
    errors: Vec<SchemeError>,
    edges: BTreeMap<EdgeId, Edge>,
}

impl<'a> Validator<'a> {
    fn new(raw: &'a RawScheme) -> Self {
        Validator {
            raw,
            errors: Vec::new(),
            edges: BTreeMap::new(),
        }
    }

    fn run(mut self) -> Result<PastingScheme, Vec<SchemeError>> {
        self.check_references();
        if !self.errors.is_empty() {
            return Err(self.errors);
        }
        for e in &self.raw.edges {
            self.edges.insert(
                e.id.clone(),
                Edge {
                    id: e.id.clone(),
                    src: e.src.clone(),
                    tgt: e.tgt.clone(),
                },
            );
        }

        let acyclic = self.check_acyclic();
        let endpoints = if acyclic { self.check_endpoints() } else { None };
        if let Some((s, t)) = &endpoints {
            self.check_reachability(s, t);
        }

        let mut faces = BTreeMap::new();
        for f in &self.raw.faces {
            if let Some(face) = self.check_face(f, acyclic) {
                faces.insert(face.id.clone(), face);
            }
        }
        if let Some((s, t)) = &endpoints {
            self.check_outer("top", &self.raw.top, s, t);
            self.check_outer("bottom", &self.raw.bottom, s, t);
        }
        self.check_roles();
        self.check_euler();

        match (self.errors.is_empty(), endpoints) {
            (true, Some((source, sink))) => Ok(PastingScheme {
                vertices: self.raw.vertices.iter().cloned().collect(),
                edges: self.edges,
                faces,
                top: self.raw.top.clone(),
                bottom: self.raw.bottom.clone(),
                source,
                sink,
            }),
            (true, None) => unreachable!("acyclic scheme without endpoints reports an error"),
            (false, _) => Err(self.errors),
        }
    }

    fn check_references(&mut self) {
        let mut vertices = BTreeSet::new();
        for v in &self.raw.vertices {
            if !vertices.insert(v.clone()) {
                self.errors.push(SchemeError::DuplicateId {
                    kind: "vertex",
                    id: v.to_string(),
                });
            }
        }
        let mut edges = BTreeSet::new();
        for e in &self.raw.edges {
            if !edges.insert(e.id.clone()) {
                self.errors.push(SchemeError::DuplicateId {
                    kind: "edge",
                    id: e.id.to_string(),
                });
            }
            for v in [&e.src, &e.tgt] {
                if !vertices.contains(v) {
                    self.errors.push(SchemeError::UnknownVertex {
                        edge: e.id.clone(),
                        vertex: v.clone(),
                    });
                }
            }
        }
        let mut faces = BTreeSet::new();
        for f in &self.raw.faces {
            if !faces.insert(f.id.clone()) {
                self.errors.push(SchemeError::DuplicateId {
                    kind: "face",
                    id: f.id.to_string(),
                });
            }
            for e in f.top.iter().chain(&f.bottom) {
                if !edges.contains(e) {
                    self.errors.push(SchemeError::UnknownEdge {
                        owner: format!("face `{}`", f.id),
                        edge: e.clone(),
                    });
                }
            }
        }
        for (owner, path) in [("top path", &self.raw.top), ("bottom path", &self.raw.bottom)] {
            for e in path {
                if !edges.contains(e) {
                    self.errors.push(SchemeError::UnknownEdge {
                        owner: owner.to_string(),
                        edge: e.clone(),
                    });
                }
            }
        }
    }

    fn successors(&self) -> BTreeMap<&VertexId, Vec<&VertexId>> {
        let mut succ: BTreeMap<&VertexId, Vec<&VertexId>> =
            self.raw.vertices.iter().map(|v| (v, Vec::new())).collect();
        for e in self.edges.values() {
            succ.get_mut(&e.src).expect("checked").push(&e.tgt);
        }
        succ
    }

    fn check_acyclic(&mut self) -> bool {
        let succ = self.successors();
        // colour: 0 unvisited, 1 on stack, 2 done
        let mut colour: BTreeMap<&VertexId, u8> = succ.keys().map(|v| (*v, 0)).collect();
        let mut stack_path: Vec<&VertexId> = Vec::new();
        let mut cycle = None;

        fn dfs<'v>(
            v: &'v VertexId,
            succ: &BTreeMap<&'v VertexId, Vec<&'v VertexId>>,
            colour: &mut BTreeMap<&'v VertexId, u8>,
            path: &mut Vec<&'v VertexId>,
            cycle: &mut Option<Vec<VertexId>>,
        ) {
            colour.insert(v, 1);
            path.push(v);
            for &w in &succ[v] {
                if cycle.is_some() {
                    break;
                }
                match colour[w] {
                    0 => dfs(w, succ, colour, path, cycle),
                    1 => {
                        let start = path.iter().position(|x| *x == w).expect("on stack");
                        *cycle = Some(path[start..].iter().map(|x| (*x).clone()).collect());
                    }
                    _ => {}
                }
            }
            path.pop();
            colour.insert(v, 2);
        }

        for v in succ.keys() {
            if cycle.is_some() {
                break;
            }
            if colour[v] == 0 {
                dfs(v, &succ, &mut colour, &mut stack_path, &mut cycle);
            }
        }
        match cycle {
            Some(cycle) => {
                self.errors.push(SchemeError::CycleDetected { cycle });
                false
            }
            None => true,
        }
    }

    fn check_endpoints(&mut self) -> Option<(VertexId, VertexId)> {
        let mut indeg: BTreeMap<&VertexId, usize> =
            self.raw.vertices.iter().map(|v| (v, 0)).collect();
        let mut outdeg = indeg.clone();
        for e in self.edges.values() {
            *indeg.get_mut(&e.tgt).expect("checked") += 1;
            *outdeg.get_mut(&e.src).expect("checked") += 1;
        }
        let sources: Vec<VertexId> = indeg
            .iter()
            .filter(|(_, d)| **d == 0)
            .map(|(v, _)| (*v).clone())
            .collect();
        let sinks: Vec<VertexId> = outdeg
            .iter()
            .filter(|(_, d)| **d == 0)
            .map(|(v, _)| (*v).clone())
            .collect();
        let source = match sources.len() {
            0 => {
                self.errors.push(SchemeError::MissingEndpoint { role: "source" });
                None
            }
            1 => Some(sources[0].clone()),
            _ => {
                self.errors.push(SchemeError::MultipleSources { sources });
                None
            }
        };
        let sink = match sinks.len() {
            0 => {
                self.errors.push(SchemeError::MissingEndpoint { role: "sink" });
                None
            }
            1 => Some(sinks[0].clone()),
            _ => {
                self.errors.push(SchemeError::MultipleSinks { sinks });
                None
            }
        };
        match (source, sink) {
            (Some(s), Some(t)) if s != t => Some((s, t)),
            (Some(s), Some(_)) => {
                // a lone vertex is both source and sink
                self.errors.push(SchemeError::BadOuterBoundary {
                    which: "top",
                    reason: format!("source and sink coincide at `{s}`"),
                });
                None
            }
            _ => None,
        }
    }

    fn check_reachability(&mut self, s: &VertexId, t: &VertexId) {
        let succ = self.successors();
        let mut pred: BTreeMap<&VertexId, Vec<&VertexId>> =
            self.raw.vertices.iter().map(|v| (v, Vec::new())).collect();
        for (v, ws) in &succ {
            for w in ws {
                pred.get_mut(w).expect("checked").push(v);
            }
        }
        let forward = flood(s, &succ);
        let backward = flood(t, &pred);
        let raw = self.raw;
        let stranded: Vec<SchemeError> = raw
            .vertices
            .iter()
            .filter(|v| !forward.contains(v) || !backward.contains(v))
            .map(|v| SchemeError::UnreachableVertex { vertex: v.clone() })
            .collect();
        self.errors.extend(stranded);
    }

    /// Checks that `path` chains and returns its endpoints.
    fn chain(&self, path: &[EdgeId]) -> Result<(VertexId, VertexId), String> {
        let first = path.first().ok_or_else(|| "path is empty".to_string())?;
        let mut at = &self.edges[first].tgt;
        for w in path.windows(2) {
            let next = &self.edges[&w[1]];
            if next.src != *at {
                return Err(format!(
                    "edge `{}` ends at `{}` but `{}` starts at `{}`",
                    w[0], at, w[1], next.src
                ));
            }
            at = &next.tgt;
        }
        Ok((self.edges[first].src.clone(), at.clone()))
    }

    fn check_face(&mut self, f: &RawFace, acyclic: bool) -> Option<Face> {
        let bad = |reason: String| SchemeError::BadFaceBoundary {
            face: f.id.clone(),
            reason,
        };
        let top = self.chain(&f.top).map_err(|r| format!("top {r}"));
        let bottom = self.chain(&f.bottom).map_err(|r| format!("bottom {r}"));
        let (top_ends, bottom_ends) = match (top, bottom) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => {
                for r in [a.err(), b.err()].into_iter().flatten() {
                    self.errors.push(bad(r));
                }
                return None;
            }
        };
        if top_ends != bottom_ends {
            self.errors.push(bad(format!(
                "top runs {}→{} but bottom runs {}→{}",
                top_ends.0, top_ends.1, bottom_ends.0, bottom_ends.1
            )));
            return None;
        }
        let (src, tgt) = top_ends;
        if src == tgt {
            self.errors.push(bad(format!("endpoints coincide at `{src}`")));
            return None;
        }
        if !acyclic {
            return None;
        }
        let top_edges: BTreeSet<&EdgeId> = f.top.iter().collect();
        if let Some(shared) = f.bottom.iter().find(|e| top_edges.contains(e)) {
            self.errors
                .push(bad(format!("top and bottom share edge `{shared}`")));
            return None;
        }
        let inner = |path: &[EdgeId]| -> BTreeSet<VertexId> {
            path[..path.len() - 1]
                .iter()
                .map(|e| self.edges[e].tgt.clone())
                .collect()
        };
        let top_inner = inner(&f.top);
        if let Some(v) = inner(&f.bottom).intersection(&top_inner).next() {
            self.errors.push(bad(format!(
                "top and bottom meet at interior vertex `{v}`"
            )));
            return None;
        }
        Some(Face {
            id: f.id.clone(),
            top: f.top.clone(),
            bottom: f.bottom.clone(),
            src,
            tgt,
        })
    }

    fn check_outer(&mut self, which: &'static str, path: &[EdgeId], s: &VertexId, t: &VertexId) {
        match self.chain(path) {
            Err(reason) => self
                .errors
                .push(SchemeError::BadOuterBoundary { which, reason }),
            Ok((a, b)) if (&a, &b) != (s, t) => self.errors.push(SchemeError::BadOuterBoundary {
                which,
                reason: format!("runs {a}→{b} instead of {s}→{t}"),
            }),
            Ok(_) => {}
        }
    }

    fn check_roles(&mut self) {
        let mut above: BTreeMap<&EdgeId, usize> = self.edges.keys().map(|e| (e, 0)).collect();
        let mut below = above.clone();
        for e in &self.raw.top {
            *above.get_mut(e).expect("checked") += 1;
        }
        for e in &self.raw.bottom {
            *below.get_mut(e).expect("checked") += 1;
        }
        for f in &self.raw.faces {
            for e in &f.bottom {
                *above.get_mut(e).expect("checked") += 1;
            }
            for e in &f.top {
                *below.get_mut(e).expect("checked") += 1;
            }
        }
        for (role, counts) in [(Role::Above, above), (Role::Below, below)] {
            for (edge, count) in counts {
                if count != 1 {
                    self.errors.push(SchemeError::RolePartitionViolation {
                        edge: edge.clone(),
                        role,
                        count,
                    });
                }
            }
        }
    }

    fn check_euler(&mut self) {
        let v = self.raw.vertices.len();
        let e = self.raw.edges.len();
        let r = self.raw.faces.len() + 1;
        if v + r != e + 2 {
            self.errors.push(SchemeError::EulerViolation {
                vertices: v,
                edges: e,
                regions: r,
            });
        }
    }
}

fn flood<'v>(start: &'v VertexId, adj: &BTreeMap<&'v VertexId, Vec<&'v VertexId>>) -> BTreeSet<&'v VertexId> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}
