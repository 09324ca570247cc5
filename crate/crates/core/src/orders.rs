//! Face relations and the groupoid of composition orders.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::ids::{join_ids, FaceId};
use crate::scheme::PastingScheme;

/// `◁` (shared edge between `τ_F` and `σ_G`), its transitive closure, and
/// `≺` (a possibly empty path from `t_F` to `s_G`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRelations {
    pub triangle: BTreeSet<(FaceId, FaceId)>,
    pub triangle_t: BTreeSet<(FaceId, FaceId)>,
    pub precedes: BTreeSet<(FaceId, FaceId)>,
}

impl FaceRelations {
    pub fn tri(&self, f: &FaceId, g: &FaceId) -> bool {
        self.triangle.contains(&(f.clone(), g.clone()))
    }

    pub fn tri_t(&self, f: &FaceId, g: &FaceId) -> bool {
        self.triangle_t.contains(&(f.clone(), g.clone()))
    }

    pub fn comparable(&self, f: &FaceId, g: &FaceId) -> bool {
        self.tri_t(f, g) || self.tri_t(g, f)
    }
}

pub fn face_relations(scheme: &PastingScheme) -> FaceRelations {
    let faces = scheme.faces();
    let mut triangle = BTreeSet::new();
    let mut precedes = BTreeSet::new();
    for f in faces.values() {
        let bottom: BTreeSet<_> = f.bottom.iter().collect();
        for g in faces.values() {
            if f.id == g.id {
                continue;
            }
            if g.top.iter().any(|e| bottom.contains(e)) {
                triangle.insert((f.id.clone(), g.id.clone()));
            }
            if scheme.reaches(&f.tgt, &g.src) {
                precedes.insert((f.id.clone(), g.id.clone()));
            }
        }
    }
    let triangle_t = transitive_closure(&triangle);
    assert!(
        triangle_t.iter().all(|(a, b)| a != b),
        "◁ᵗ is reflexive on a validated scheme"
    );
    FaceRelations {
        triangle,
        triangle_t,
        precedes,
    }
}

fn transitive_closure(rel: &BTreeSet<(FaceId, FaceId)>) -> BTreeSet<(FaceId, FaceId)> {
    let mut out = rel.clone();
    loop {
        let mut added = Vec::new();
        for (a, b) in &out {
            for (c, d) in out.range((b.clone(), FaceId::new(""))..) {
                if c != b {
                    break;
                }
                if !out.contains(&(a.clone(), d.clone())) {
                    added.push((a.clone(), d.clone()));
                }
            }
        }
        if added.is_empty() {
            return out;
        }
        out.extend(added);
    }
}

/// A strict linear extension of `◁ᵗ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompOrder {
    pub faces: Vec<FaceId>,
}

impl CompOrder {
    pub fn new(faces: Vec<FaceId>) -> Self {
        CompOrder { faces }
    }

    pub fn parse(text: &str) -> Self {
        let faces = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(FaceId::from)
            .collect();
        CompOrder { faces }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn position(&self, f: &FaceId) -> Option<usize> {
        self.faces.iter().position(|x| x == f)
    }

    pub fn swapped(&self, i: usize) -> CompOrder {
        let mut faces = self.faces.clone();
        faces.swap(i, i + 1);
        CompOrder { faces }
    }

    /// Checks the order is a linear extension of `◁ᵗ` on all faces of `scheme`.
    pub fn check(&self, scheme: &PastingScheme, rel: &FaceRelations) -> Result<(), OrderError> {
        let given: BTreeSet<_> = self.faces.iter().collect();
        if given.len() != self.faces.len() || given.len() != scheme.faces().len() {
            return Err(OrderError::InvalidOrder {
                order: self.clone(),
                reason: "not a permutation of the scheme's faces".into(),
            });
        }
        if let Some(f) = self.faces.iter().find(|f| !scheme.faces().contains_key(*f)) {
            return Err(OrderError::InvalidOrder {
                order: self.clone(),
                reason: format!("unknown face `{f}`"),
            });
        }
        let pos: BTreeMap<_, _> = self.faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
        for (a, b) in &rel.triangle_t {
            if pos[a] > pos[b] {
                return Err(OrderError::InvalidOrder {
                    order: self.clone(),
                    reason: format!("`{a}` must come before `{b}`"),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for CompOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_ids(&self.faces))
    }
}

/// Transposition of the faces at `index` and `index + 1` of `at`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenMove {
    pub at: CompOrder,
    pub index: usize,
}

impl GenMove {
    pub fn target(&self) -> CompOrder {
        self.at.swapped(self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("InvalidOrder: [{order}]: {reason}")]
    InvalidOrder { order: CompOrder, reason: String },
    #[error("InvalidMove: index {index} on [{order}]: {reason}")]
    InvalidMove {
        order: CompOrder,
        index: usize,
        reason: String,
    },
}

/// All strict linear extensions, in lexicographic order of face-id sequences.
pub fn enumerate_orders(scheme: &PastingScheme) -> Vec<CompOrder> {
    enumerate_with(scheme, &face_relations(scheme))
}

pub fn enumerate_with(scheme: &PastingScheme, rel: &FaceRelations) -> Vec<CompOrder> {
    let faces = scheme.face_ids();
    let mut preds: BTreeMap<&FaceId, usize> = faces.iter().map(|f| (f, 0)).collect();
    for (_, b) in &rel.triangle_t {
        *preds.get_mut(b).expect("face of scheme") += 1;
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(faces.len());
    let mut used = vec![false; faces.len()];
    extend(&faces, rel, &mut preds, &mut used, &mut prefix, &mut out);
    out
}

fn extend<'a>(
    faces: &'a [FaceId],
    rel: &FaceRelations,
    preds: &mut BTreeMap<&'a FaceId, usize>,
    used: &mut [bool],
    prefix: &mut Vec<FaceId>,
    out: &mut Vec<CompOrder>,
) {
    if prefix.len() == faces.len() {
        out.push(CompOrder::new(prefix.clone()));
        return;
    }
    for (k, f) in faces.iter().enumerate() {
        if used[k] || preds[f] != 0 {
            continue;
        }
        used[k] = true;
        prefix.push(f.clone());
        let succ: Vec<&FaceId> = faces.iter().filter(|g| rel.tri_t(f, g)).collect();
        for g in &succ {
            *preds.get_mut(*g).expect("face") -= 1;
        }
        extend(faces, rel, preds, used, prefix, out);
        for g in &succ {
            *preds.get_mut(*g).expect("face") += 1;
        }
        prefix.pop();
        used[k] = false;
    }
}

/// Indices where the adjacent faces are `◁ᵗ`-incomparable.
pub fn gen_moves(scheme: &PastingScheme, o: &CompOrder) -> Result<Vec<GenMove>, OrderError> {
    let rel = face_relations(scheme);
    o.check(scheme, &rel)?;
    Ok(gen_moves_with(&rel, o))
}

pub fn gen_moves_with(rel: &FaceRelations, o: &CompOrder) -> Vec<GenMove> {
    (0..o.len().saturating_sub(1))
        .filter(|&i| !rel.comparable(&o.faces[i], &o.faces[i + 1]))
        .map(|index| GenMove {
            at: o.clone(),
            index,
        })
        .collect()
}

/// A move path from `a` to `b`, obtained by bubbling `b[k]` leftward into
/// position `k` for each `k` in turn.
pub fn connect_orders(
    scheme: &PastingScheme,
    a: &CompOrder,
    b: &CompOrder,
) -> Result<Vec<GenMove>, OrderError> {
    let rel = face_relations(scheme);
    a.check(scheme, &rel)?;
    b.check(scheme, &rel)?;
    Ok(connect_with(&rel, a, b))
}

pub fn connect_with(rel: &FaceRelations, a: &CompOrder, b: &CompOrder) -> Vec<GenMove> {
    let mut cur = a.clone();
    let mut path = Vec::new();
    for (k, want) in b.faces.iter().enumerate() {
        let mut at = cur.position(want).expect("same face set");
        while at > k {
            let index = at - 1;
            assert!(
                !rel.comparable(&cur.faces[index], &cur.faces[at]),
                "connecting [{a}] to [{b}] crosses a ◁ᵗ pair"
            );
            path.push(GenMove {
                at: cur.clone(),
                index,
            });
            cur = cur.swapped(index);
            at = index;
        }
    }
    debug_assert_eq!(&cur, b);
    path
}
