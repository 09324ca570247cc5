//! The free Gray-category term engine.
//!
//! A composite 2-cell is a [`VertWord`]: a chain of whiskered generators, each
//! rewriting one contiguous segment of the current 1-cell path. A composite
//! 3-cell is a [`MoveWord`]: a source word and a list of basic [`Move`]s.
//! Equality of move words is decided by bounded search in [`search`].

mod labelling;
pub mod search;

use std::fmt;

use thiserror::Error;

pub use labelling::{Decl3, FaceLabel, LabelError, Labelling, PairFragment, Pasted, Signature, ThreeCellSpec};
pub use search::{equal_up_to, Rule, RuleStep, Verdict, DEFAULT_BUDGET};

use crate::ids::{compose_notation, CellName, EdgeId, FaceId, GenName, Path};
use crate::orders::{CompOrder, GenMove};

/// Domain and codomain paths of a 2-generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenSig {
    pub dom: Path,
    pub cod: Path,
}

/// `post ∘ gen ∘ pre`, with `pre` the part of the path traversed before the
/// generator's domain and `post` the part after it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WhiskCell {
    pub pre: Path,
    pub gen: GenName,
    pub post: Path,
}

impl WhiskCell {
    pub fn new(pre: Path, gen: impl Into<GenName>, post: Path) -> Self {
        WhiskCell {
            pre,
            gen: gen.into(),
            post,
        }
    }

    pub fn dom(&self, sig: &Signature) -> Path {
        let g = sig.gen(&self.gen);
        concat3(&self.pre, &g.dom, &self.post)
    }

    pub fn cod(&self, sig: &Signature) -> Path {
        let g = sig.gen(&self.gen);
        concat3(&self.pre, &g.cod, &self.post)
    }
}

impl fmt::Display for WhiskCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ∘ {} ∘ {}",
            compose_notation(&self.post),
            self.gen,
            compose_notation(&self.pre)
        )
    }
}

pub(crate) fn concat3(a: &[EdgeId], b: &[EdgeId], c: &[EdgeId]) -> Path {
    let mut out = Vec::with_capacity(a.len() + b.len() + c.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.extend_from_slice(c);
    out
}

/// A composite 2-cell `cells[n-1] · … · cells[0]` out of `source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertWord {
    pub source: Path,
    pub cells: Vec<WhiskCell>,
}

impl VertWord {
    /// The 1-cell path after `k` cells.
    pub fn path_after(&self, sig: &Signature, k: usize) -> Path {
        if k == 0 {
            self.source.clone()
        } else {
            self.cells[k - 1].cod(sig)
        }
    }

    pub fn target(&self, sig: &Signature) -> Path {
        self.path_after(sig, self.cells.len())
    }

    pub fn check_chain(&self, sig: &Signature) -> Result<(), TermError> {
        let mut cur = self.source.clone();
        for (k, c) in self.cells.iter().enumerate() {
            if !sig.gens.contains_key(&c.gen) {
                return Err(TermError::UnknownGenerator(c.gen.clone()));
            }
            if c.dom(sig) != cur {
                return Err(TermError::BrokenChain { index: k });
            }
            cur = c.cod(sig);
        }
        Ok(())
    }
}

impl fmt::Display for VertWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.cells.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// Cell `i` sits left of cell `i+1`; the swap moves the right one first.
    Plus,
    /// Cell `i` sits right of cell `i+1`.
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Swap { index: usize, sign: Sign },
    Gen3 { index: usize, cell: CellName },
    Gen3Pair { index: usize, cell: CellName },
}

impl Move {
    pub fn swap(index: usize, sign: Sign) -> Move {
        Move::Swap { index, sign }
    }

    pub fn gen3(index: usize, cell: impl Into<CellName>) -> Move {
        Move::Gen3 {
            index,
            cell: cell.into(),
        }
    }

    pub fn gen3_pair(index: usize, cell: impl Into<CellName>) -> Move {
        Move::Gen3Pair {
            index,
            cell: cell.into(),
        }
    }

    pub fn index(&self) -> usize {
        match self {
            Move::Swap { index, .. } | Move::Gen3 { index, .. } | Move::Gen3Pair { index, .. } => *index,
        }
    }

    pub fn with_index(&self, index: usize) -> Move {
        let mut m = self.clone();
        match &mut m {
            Move::Swap { index: i, .. } | Move::Gen3 { index: i, .. } | Move::Gen3Pair { index: i, .. } => {
                *i = index
            }
        }
        m
    }

    /// Number of cells consumed.
    pub fn width_in(&self) -> usize {
        match self {
            Move::Gen3 { .. } => 1,
            Move::Swap { .. } | Move::Gen3Pair { .. } => 2,
        }
    }

    /// Number of cells produced.
    pub fn width_out(&self) -> usize {
        match self {
            Move::Gen3 { .. } | Move::Gen3Pair { .. } => 1,
            Move::Swap { .. } => 2,
        }
    }

    pub fn is_swap(&self) -> bool {
        matches!(self, Move::Swap { .. })
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Swap { index, sign } => write!(f, "Swap({index},{sign})"),
            Move::Gen3 { index, cell } => write!(f, "Gen3({index},{cell})"),
            Move::Gen3Pair { index, cell } => write!(f, "Gen3Pair({index},{cell})"),
        }
    }
}

/// A composite 3-cell out of `source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoveWord {
    pub source: VertWord,
    pub moves: Vec<Move>,
}

impl MoveWord {
    pub fn identity(source: VertWord) -> Self {
        MoveWord {
            source,
            moves: Vec::new(),
        }
    }

    /// `self` followed by `moves`.
    pub fn then(mut self, moves: impl IntoIterator<Item = Move>) -> Self {
        self.moves.extend(moves);
        self
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moves.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("SigmaNotFound: top boundary of face `{face}` does not occur in the current path")]
    SigmaNotFound { face: FaceId },
    #[error("SigmaAmbiguous: top boundary of face `{face}` occurs more than once in the current path")]
    SigmaAmbiguous { face: FaceId },
    #[error("FaceAbsent: face `{0}` does not occur in the order")]
    FaceAbsent(FaceId),
    #[error("UnknownGenerator: `{0}`")]
    UnknownGenerator(GenName),
    #[error("UnknownCell: no 3-cell named `{0}`")]
    UnknownCell(CellName),
    #[error("WrongCellKind: 3-cell `{0}` has the wrong kind for this operation")]
    WrongCellKind(CellName),
    #[error("BrokenChain: cell {index} does not start where the previous one ends")]
    BrokenChain { index: usize },
    #[error("SwapNotIndependent: cells {index} and {} overlap", .index + 1)]
    SwapNotIndependent { index: usize },
    #[error("MoveNotApplicable: move {index} ({mv}): {reason}")]
    MoveNotApplicable {
        index: usize,
        mv: String,
        reason: String,
    },
    #[error("InvalidOrder: {0}")]
    InvalidOrder(String),
}

/// The unique start of `needle` in `hay` as a contiguous subpath.
pub(crate) fn find_unique(hay: &[EdgeId], needle: &[EdgeId]) -> Result<usize, usize> {
    if needle.is_empty() || needle.len() > hay.len() {
        return Err(0);
    }
    let hits: Vec<usize> = (0..=hay.len() - needle.len())
        .filter(|&k| hay[k..k + needle.len()] == *needle)
        .collect();
    match hits.as_slice() {
        [k] => Ok(*k),
        other => Err(other.len()),
    }
}

/// Evaluates the labelling along a composition order.
pub fn eval_order(lab: &Labelling, o: &CompOrder) -> Result<VertWord, TermError> {
    let scheme = &lab.scheme;
    let mut cur = scheme.top().clone();
    let mut cells = Vec::new();
    for f in &o.faces {
        let face = scheme
            .face(f)
            .map_err(|_| TermError::InvalidOrder(format!("unknown face `{f}`")))?;
        let at = find_unique(&cur, &face.top).map_err(|n| {
            if n == 0 {
                TermError::SigmaNotFound { face: f.clone() }
            } else {
                TermError::SigmaAmbiguous { face: f.clone() }
            }
        })?;
        let pre = cur[..at].to_vec();
        let post = cur[at + face.top.len()..].to_vec();
        lab.label(f).expand(&pre, &post, &mut cells);
        cur = concat3(&pre, &face.bottom, &post);
    }
    debug_assert!(o.faces.is_empty() || cur == *scheme.bottom());
    Ok(VertWord {
        source: scheme.top().clone(),
        cells,
    })
}

/// Position ranges of cells `i` and `i+1` inside the path between them, or
/// `None` if they overlap.
fn swap_sign_of(sig: &Signature, w: &VertWord, i: usize) -> Option<Sign> {
    let (a, b) = (w.cells.get(i)?, w.cells.get(i + 1)?);
    let a_start = a.pre.len();
    let a_end = a_start + sig.gen(&a.gen).cod.len();
    let b_start = b.pre.len();
    let b_end = b_start + sig.gen(&b.gen).dom.len();
    if a_end <= b_start {
        Some(Sign::Plus)
    } else if b_end <= a_start {
        Some(Sign::Minus)
    } else {
        None
    }
}

/// The sign a swap at `i` must carry, if the two cells are independent.
pub fn swap_sign(sig: &Signature, w: &VertWord, i: usize) -> Option<Sign> {
    swap_sign_of(sig, w, i)
}

fn place(path: &[EdgeId], at: usize, gen: &GenName, sig: &Signature) -> WhiskCell {
    let len = sig.gen(gen).dom.len();
    debug_assert_eq!(&path[at..at + len], sig.gen(gen).dom.as_slice());
    WhiskCell {
        pre: path[..at].to_vec(),
        gen: gen.clone(),
        post: path[at + len..].to_vec(),
    }
}

/// Applies one move, or explains why it does not apply.
pub fn apply_move(sig: &Signature, w: &VertWord, m: &Move) -> Result<VertWord, String> {
    let n = w.cells.len();
    if m.index() + m.width_in() > n {
        return Err(format!("index out of range for a word of {n} cells"));
    }
    let i = m.index();
    let mut cells = w.cells.clone();
    match m {
        Move::Swap { sign, .. } => {
            let actual = swap_sign_of(sig, w, i).ok_or("cells are not independent")?;
            if actual != *sign {
                return Err(format!("swap requires sign {actual}"));
            }
            let (a, b) = (&w.cells[i], &w.cells[i + 1]);
            let ga = sig.gen(&a.gen);
            let gb = sig.gen(&b.gen);
            let before = w.path_after(sig, i);
            let (first, second) = match actual {
                Sign::Plus => {
                    // b sits right of a: shift its start back to the path before a
                    let b_at = b.pre.len() + ga.dom.len() - ga.cod.len();
                    let first = place(&before, b_at, &b.gen, sig);
                    let mid = first.cod(sig);
                    (first.clone(), place(&mid, a.pre.len(), &a.gen, sig))
                }
                Sign::Minus => {
                    let first = place(&before, b.pre.len(), &b.gen, sig);
                    let mid = first.cod(sig);
                    let a_at = a.pre.len() + gb.cod.len() - gb.dom.len();
                    (first.clone(), place(&mid, a_at, &a.gen, sig))
                }
            };
            cells[i] = first;
            cells[i + 1] = second;
        }
        Move::Gen3 { cell, .. } => {
            let Some(Decl3::OneToOne { source, target, .. }) = sig.cells.get(cell) else {
                return Err(format!("`{cell}` is not a one-to-one 3-cell"));
            };
            if cells[i].gen != *source {
                return Err(format!("cell carries `{}`, not `{source}`", cells[i].gen));
            }
            cells[i].gen = target.clone();
        }
        Move::Gen3Pair { cell, .. } => {
            let Some(Decl3::TwoToOne {
                source_f,
                source_g,
                target,
                fragment,
                ..
            }) = sig.cells.get(cell)
            else {
                return Err(format!("`{cell}` is not a two-to-one 3-cell"));
            };
            let (a, b) = (&w.cells[i], &w.cells[i + 1]);
            if a.gen != *source_f || b.gen != *source_g {
                return Err(format!(
                    "cells carry `{}`, `{}` instead of `{source_f}`, `{source_g}`",
                    a.gen, b.gen
                ));
            }
            let merged = fragment.merge(a, b).ok_or("whiskers do not realise the pasted pair")?;
            cells.splice(i..i + 2, [WhiskCell {
                pre: merged.0,
                gen: target.clone(),
                post: merged.1,
            }]);
        }
    }
    Ok(VertWord {
        source: w.source.clone(),
        cells,
    })
}

/// Runs a move word to its target.
pub fn apply_moves(sig: &Signature, mw: &MoveWord) -> Result<VertWord, TermError> {
    let mut cur = mw.source.clone();
    for (index, m) in mw.moves.iter().enumerate() {
        cur = apply_move(sig, &cur, m).map_err(|reason| TermError::MoveNotApplicable {
            index,
            mv: m.to_string(),
            reason,
        })?;
    }
    Ok(cur)
}

/// Signed swaps realising a sequence of transposition indices from `w`.
pub fn swaps_from(sig: &Signature, w: &VertWord, indices: &[usize]) -> Result<(Vec<Move>, VertWord), TermError> {
    let mut cur = w.clone();
    let mut out = Vec::with_capacity(indices.len());
    for &index in indices {
        let sign = swap_sign_of(sig, &cur, index).ok_or(TermError::SwapNotIndependent { index })?;
        let m = Move::swap(index, sign);
        cur = apply_move(sig, &cur, &m).expect("sign computed from the word");
        out.push(m);
    }
    Ok((out, cur))
}

/// The interchanger word along a path in the order groupoid, starting at `from`.
pub fn gamma_word(lab: &Labelling, from: &CompOrder, path: &[GenMove]) -> Result<MoveWord, TermError> {
    let source = eval_order(lab, from)?;
    let mut at = from.clone();
    for m in path {
        if m.at != at {
            return Err(TermError::InvalidOrder(format!(
                "move at index {} starts from [{}], expected [{at}]",
                m.index, m.at
            )));
        }
        at = m.target();
    }
    let indices: Vec<usize> = path.iter().map(|m| m.index).collect();
    let (moves, _) = swaps_from(&lab.sig, &source, &indices)?;
    Ok(MoveWord { source, moves })
}

/// The component at `o` of the transformation induced by a one-to-one 3-cell.
pub fn induced_nat1(lab: &Labelling, decl: &CellName, o: &CompOrder) -> Result<MoveWord, TermError> {
    let Some(d) = lab.sig.cells.get(decl) else {
        return Err(TermError::UnknownCell(decl.clone()));
    };
    let Decl3::OneToOne { face, .. } = d else {
        return Err(TermError::WrongCellKind(decl.clone()));
    };
    let source = eval_order(lab, o)?;
    let pos = o.position(face).ok_or_else(|| TermError::FaceAbsent(face.clone()))?;
    // a face's cell index equals its order position when every label is a
    // single generator; pasted labels contribute two cells
    let index = lab.cell_index(o, pos);
    Ok(MoveWord {
        source,
        moves: vec![Move::gen3(index, decl.clone())],
    })
}
