//! Seeded random pasting schemes.
//!
//! Generation starts from a single edge and applies local operations that
//! keep every edge covered once from above and once from below:
//! subdividing an edge, splitting an edge into a bigon, and stacking a new
//! face onto a segment of some face boundary (or the outer boundary).

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ids::{EdgeId, FaceId, GenName, Path, VertexId};
use crate::scheme::{PastingScheme, RawEdge, RawFace, RawScheme};
use crate::terms::{Labelling, ThreeCellSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeGrammar {
    pub seed: u64,
    pub max_faces: usize,
}

/// A path slot: the outer boundary or one side of a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Top,
    Bottom,
    FaceTop(usize),
    FaceBottom(usize),
}

#[derive(Debug, Default)]
struct Draft {
    vertices: Vec<VertexId>,
    edges: Vec<RawEdge>,
    faces: Vec<RawFace>,
    top: Path,
    bottom: Path,
}

impl Draft {
    fn path_mut(&mut self, s: Slot) -> &mut Path {
        match s {
            Slot::Top => &mut self.top,
            Slot::Bottom => &mut self.bottom,
            Slot::FaceTop(i) => &mut self.faces[i].top,
            Slot::FaceBottom(i) => &mut self.faces[i].bottom,
        }
    }

    fn path(&self, s: Slot) -> &Path {
        match s {
            Slot::Top => &self.top,
            Slot::Bottom => &self.bottom,
            Slot::FaceTop(i) => &self.faces[i].top,
            Slot::FaceBottom(i) => &self.faces[i].bottom,
        }
    }

    /// Paths whose edges have the region of the path's owner below them.
    fn upper_slots(&self) -> Vec<Slot> {
        let mut v = vec![Slot::Top];
        v.extend((0..self.faces.len()).map(Slot::FaceBottom));
        v
    }

    fn lower_slots(&self) -> Vec<Slot> {
        let mut v = vec![Slot::Bottom];
        v.extend((0..self.faces.len()).map(Slot::FaceTop));
        v
    }

    fn all_slots(&self) -> Vec<Slot> {
        let mut v = self.upper_slots();
        v.extend(self.lower_slots());
        v
    }

    fn endpoints(&self, seg: &[EdgeId]) -> (VertexId, VertexId) {
        let find = |id: &EdgeId| self.edges.iter().find(|e| e.id == *id).expect("known edge");
        (find(&seg[0]).src.clone(), find(&seg[seg.len() - 1]).tgt.clone())
    }

    fn fresh_vertex(&mut self) -> VertexId {
        let v = VertexId::new(format!("v{}", self.vertices.len()));
        self.vertices.push(v.clone());
        v
    }

    fn fresh_edge(&mut self, src: VertexId, tgt: VertexId) -> EdgeId {
        let id = EdgeId::new(format!("e{}", self.edges.len()));
        self.edges.push(RawEdge {
            id: id.clone(),
            src,
            tgt,
        });
        id
    }

    fn fresh_face(&mut self, top: Path, bottom: Path) {
        let id = FaceId::new(format!("F{}", self.faces.len()));
        self.faces.push(RawFace { id, top, bottom });
    }

    /// `e: u → v` becomes `e: u → w` followed by a new `w → v`.
    fn subdivide(&mut self, k: usize) {
        let old_tgt = self.edges[k].tgt.clone();
        let e = self.edges[k].id.clone();
        let w = self.fresh_vertex();
        self.edges[k].tgt = w.clone();
        let n = self.fresh_edge(w, old_tgt);
        for s in self.all_slots() {
            let p = self.path_mut(s);
            if let Some(i) = p.iter().position(|x| *x == e) {
                p.insert(i + 1, n.clone());
            }
        }
    }

    /// Replaces `seg` (a contiguous part of the path in `slot`) by a single
    /// new edge and puts a new face between the two.
    fn stack(&mut self, slot: Slot, start: usize, len: usize, upper: bool) {
        let seg: Path = self.path(slot)[start..start + len].to_vec();
        let (u, v) = self.endpoints(&seg);
        let n = self.fresh_edge(u, v);
        self.path_mut(slot).splice(start..start + len, [n.clone()]);
        if upper {
            // the slot lies above `seg`; the new face sits between them
            self.fresh_face(vec![n], seg);
        } else {
            self.fresh_face(seg, vec![n]);
        }
    }

    fn finish(mut self) -> RawScheme {
        self.vertices.sort();
        RawScheme {
            vertices: self.vertices,
            edges: self.edges,
            faces: self.faces,
            top: self.top,
            bottom: self.bottom,
        }
    }
}

impl SchemeGrammar {
    pub fn new(seed: u64, max_faces: usize) -> Self {
        SchemeGrammar { seed, max_faces }
    }

    /// The raw document, before validation.
    pub fn generate_raw(&self) -> RawScheme {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut d = Draft::default();
        let s = d.fresh_vertex();
        let t = d.fresh_vertex();
        let e = d.fresh_edge(s, t);
        d.top = vec![e.clone()];
        d.bottom = vec![e];
        let want = if self.max_faces == 0 { 0 } else { rng.gen_range(1..=self.max_faces) };
        while d.faces.len() < want {
            match rng.gen_range(0..8) {
                // serial subdivision
                0..=3 => {
                    let k = rng.gen_range(0..d.edges.len());
                    d.subdivide(k);
                }
                // parallel split: a bigon under one edge, chosen uniformly
                4..=6 => {
                    let sites: Vec<(Slot, usize)> = d
                        .upper_slots()
                        .into_iter()
                        .flat_map(|s| (0..d.path(s).len()).map(move |i| (s, i)))
                        .collect();
                    let &(slot, i) = sites.choose(&mut rng).expect("every edge has a region above");
                    d.stack(slot, i, 1, true);
                }
                // stacking onto a longer segment, from above or below
                _ => {
                    let upper = rng.gen_bool(0.5);
                    let slots = if upper { d.upper_slots() } else { d.lower_slots() };
                    let long: Vec<Slot> = slots.into_iter().filter(|s| d.path(*s).len() >= 2).collect();
                    let Some(&slot) = long.choose(&mut rng) else {
                        continue;
                    };
                    let n = d.path(slot).len();
                    let len = rng.gen_range(2..=n);
                    let start = rng.gen_range(0..=n - len);
                    d.stack(slot, start, len, upper);
                }
            }
        }
        d.finish()
    }

    pub fn generate(&self) -> PastingScheme {
        let raw = self.generate_raw();
        match PastingScheme::validate(&raw) {
            Ok(s) => s,
            Err(errs) => panic!("grammar produced an invalid scheme (seed {}): {errs:?}", self.seed),
        }
    }
}

/// `count` schemes from consecutive seeds.
pub fn corpus(seed: u64, count: usize, max_faces: usize) -> Vec<PastingScheme> {
    (0..count as u64)
        .map(|i| SchemeGrammar::new(seed.wrapping_mul(1_000_003).wrapping_add(i), max_faces).generate())
        .collect()
}

/// Generators named after faces and one one-to-one cell `T<face>` per face.
pub fn corpus_labelling(scheme: &PastingScheme) -> Labelling {
    let specs: Vec<ThreeCellSpec> = scheme
        .face_ids()
        .into_iter()
        .map(|f| ThreeCellSpec::OneToOne {
            name: format!("T{f}").into(),
            target: GenName::new(format!("{f}'")),
            face: f,
        })
        .collect();
    Labelling::new(scheme.clone(), &BTreeMap::new(), &specs).expect("fresh names")
}
