//! Replacement schemes for a pair of faces with no unique composition.
//!
//! Only the series family is handled: every face sits directly between the
//! outer top and bottom paths, so the faces strictly between `F` and `G`
//! along the spine can be pushed to one side of the merged face. Pushing
//! them first leaves `F#G` over a single long edge (the composite of the
//! bottoms); pushing them last leaves it under a long edge made of the tops.

use std::collections::BTreeSet;

use crate::glue::{classify_composable, merged_id, Composable, GlueError};
use crate::ids::{compose_notation, EdgeId, FaceId, Path};
use crate::orders::CompOrder;
use crate::scheme::{PastingScheme, RawEdge, RawFace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialCandidate {
    /// The order of the original scheme the replacement realises.
    pub order: CompOrder,
    pub scheme: PastingScheme,
    pub merged: FaceId,
    pub long_edge: EdgeId,
}

fn segment_at(path: &[EdgeId], seg: &[EdgeId]) -> Option<usize> {
    path.windows(seg.len()).position(|w| w == seg)
}

/// Joins edge ids in composition order, the way the composite 1-cell is
/// written: `c1.g.b1.f.a1` for the path `a1, f, b1, g, c1`.
fn long_id(path: &[EdgeId]) -> EdgeId {
    EdgeId::new(compose_notation(path).replace('·', "."))
}

pub fn special_case_strategy(scheme: &PastingScheme, f: &FaceId, g: &FaceId) -> Result<Vec<SpecialCandidate>, GlueError> {
    match classify_composable(scheme, f, g)? {
        Composable::CaseA => {}
        _ => {
            return Err(GlueError::NotCaseA {
                f: f.clone(),
                g: g.clone(),
            })
        }
    }
    let (top, bottom) = (scheme.top(), scheme.bottom());
    // spine position of each face: where its top sits in the outer top path
    let mut spine: Vec<(usize, FaceId)> = Vec::new();
    for face in scheme.faces().values() {
        let (Some(i), Some(_)) = (segment_at(top, &face.top), segment_at(bottom, &face.bottom)) else {
            return Err(GlueError::UnsupportedConfiguration(format!(
                "face `{}` does not sit between the outer boundaries",
                face.id
            )));
        };
        spine.push((i, face.id.clone()));
    }
    spine.sort();
    let spine: Vec<FaceId> = spine.into_iter().map(|(_, id)| id).collect();
    let pos = |x: &FaceId| spine.iter().position(|y| y == x).expect("face on spine");
    let (first, second) = if pos(f) < pos(g) { (f, g) } else { (g, f) };
    let (pf, pg) = (pos(first), pos(second));
    let middle = &spine[pf + 1..pg];
    let merged = merged_id(first, second);
    if scheme.faces().contains_key(&merged) {
        return Err(GlueError::IdCollision(merged.to_string()));
    }

    let faces = scheme.faces();
    let (ff, gf) = (&faces[first], &faces[second]);
    let span = |path: &Path, a: &Path, b: &Path| -> (usize, usize) {
        let start = segment_at(path, a).expect("face on outer path");
        let end = segment_at(path, b).expect("face on outer path") + b.len();
        (start, end)
    };

    let mut out = Vec::new();
    for middle_first in [true, false] {
        // the side of the merged face that becomes one long edge
        let (outer, keep_outer, f_long, g_long, f_short, g_short) = if middle_first {
            (bottom, top, &ff.bottom, &gf.bottom, &ff.top, &gf.top)
        } else {
            (top, bottom, &ff.top, &gf.top, &ff.bottom, &gf.bottom)
        };
        let (s0, s1) = span(outer, f_long, g_long);
        let absorbed: Path = outer[s0..s1].to_vec();
        let long = long_id(&absorbed);
        if scheme.edge(&long).is_some() {
            return Err(GlueError::IdCollision(long.to_string()));
        }
        // between the two faces the short side follows the absorbed path,
        // which runs along the near sides of the middle faces
        let near: Path = outer[s0 + f_long.len()..s1 - g_long.len()].to_vec();
        let short: Path = [f_short.as_slice(), &near, g_short].concat();

        let dropped_edges: BTreeSet<EdgeId> = f_long.iter().chain(g_long).cloned().collect();
        let mut raw = scheme.to_raw();
        let src = scheme.edge(&absorbed[0]).expect("edge").src.clone();
        let tgt = scheme.edge(absorbed.last().expect("nonempty")).expect("edge").tgt.clone();
        raw.edges.retain(|e| !dropped_edges.contains(&e.id));
        raw.edges.push(RawEdge {
            id: long.clone(),
            src,
            tgt,
        });
        raw.faces.retain(|x| x.id != *first && x.id != *second);
        let (mtop, mbottom) = if middle_first {
            (short, vec![long.clone()])
        } else {
            (vec![long.clone()], short)
        };
        raw.faces.push(RawFace {
            id: merged.clone(),
            top: mtop,
            bottom: mbottom,
        });
        raw.faces.sort_by(|x, y| x.id.cmp(&y.id));
        let mut new_outer = outer.clone();
        new_outer.splice(s0..s1, [long.clone()]);
        if middle_first {
            raw.bottom = new_outer;
            raw.top = keep_outer.clone();
        } else {
            raw.top = new_outer;
            raw.bottom = keep_outer.clone();
        }
        // vertices only the dropped edges touched disappear
        let used: BTreeSet<_> = raw.edges.iter().flat_map(|e| [e.src.clone(), e.tgt.clone()]).collect();
        raw.vertices.retain(|v| used.contains(v));
        let glued = PastingScheme::validate(&raw).map_err(GlueError::Invalid)?;

        let mut order: Vec<FaceId> = spine[..pf].to_vec();
        if middle_first {
            order.extend_from_slice(middle);
            order.extend([first.clone(), second.clone()]);
        } else {
            order.extend([first.clone(), second.clone()]);
            order.extend_from_slice(middle);
        }
        order.extend_from_slice(&spine[pg + 1..]);
        out.push(SpecialCandidate {
            order: CompOrder::new(order),
            scheme: glued,
            merged: merged.clone(),
            long_edge: long,
        });
    }
    Ok(out)
}
