//! Randomised guard against the search equating words it should not.
//!
//! Two invariants must survive every rewrite: the endpoints of a move word,
//! and the multiset of 3-cells it applies (no rule creates, deletes or
//! renames a generator 3-cell). So an `Equal` verdict on a pair that differs
//! in either is a bug. Pairs are drawn three ways: independent random walks,
//! a walk against itself with an inserted swap and its inverse, and a walk
//! against a copy using a parallel twin of one of its 3-cells.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ids::CellName;
use crate::orders::enumerate_orders;
use crate::terms::{apply_move, apply_moves, equal_up_to, eval_order, swap_sign, Decl3, Labelling, Move, MoveWord, Signature, Verdict, VertWord};

const TWIN_SUFFIX: &str = "~twin";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SoundnessSummary {
    pub pairs: usize,
    pub equal: usize,
    pub distinct: usize,
    pub unknown: usize,
    pub violations: Vec<String>,
}

/// Adds a parallel copy of every one-to-one cell.
pub fn with_twins(lab: &Labelling) -> Labelling {
    let mut out = lab.clone();
    for (name, d) in &lab.sig.cells {
        if let Decl3::OneToOne { face, source, target, .. } = d {
            let twin = CellName::new(format!("{name}{TWIN_SUFFIX}"));
            out.sig.cells.insert(
                twin.clone(),
                Decl3::OneToOne {
                    name: twin,
                    face: face.clone(),
                    source: source.clone(),
                    target: target.clone(),
                },
            );
        }
    }
    out
}

fn applicable(sig: &Signature, w: &VertWord) -> Vec<Move> {
    let mut out = Vec::new();
    for i in 0..w.cells.len() {
        if i + 1 < w.cells.len() {
            if let Some(sign) = swap_sign(sig, w, i) {
                out.push(Move::swap(i, sign));
            }
        }
        for (name, d) in &sig.cells {
            if let Decl3::OneToOne { source, .. } = d {
                if *source == w.cells[i].gen && !name.as_str().ends_with(TWIN_SUFFIX) {
                    out.push(Move::gen3(i, name.clone()));
                }
            }
        }
    }
    out
}

/// A random walk of at most `len` moves from `source`.
pub fn random_word(sig: &Signature, source: &VertWord, rng: &mut impl Rng, len: usize) -> MoveWord {
    let mut w = source.clone();
    let mut moves = Vec::new();
    for _ in 0..len {
        let Some(m) = applicable(sig, &w).choose(rng).cloned() else {
            break;
        };
        w = apply_move(sig, &w, &m).expect("applicable move");
        moves.push(m);
    }
    MoveWord {
        source: source.clone(),
        moves,
    }
}

fn cell_counts(mw: &MoveWord) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for m in &mw.moves {
        if let Move::Gen3 { cell, .. } | Move::Gen3Pair { cell, .. } = m {
            *out.entry(cell.to_string()).or_default() += 1;
        }
    }
    out
}

/// `b` with one application of a cell replaced by its twin, if it has any.
fn twin_variant(a: &MoveWord, rng: &mut impl Rng) -> Option<MoveWord> {
    let sites: Vec<usize> = (0..a.moves.len())
        .filter(|&k| matches!(a.moves[k], Move::Gen3 { .. }))
        .collect();
    let &k = sites.choose(rng)?;
    let mut b = a.clone();
    if let Move::Gen3 { index, cell } = &a.moves[k] {
        b.moves[k] = Move::gen3(*index, format!("{cell}{TWIN_SUFFIX}"));
    }
    Some(b)
}

/// `a` with a swap and its inverse inserted at a random position.
fn detour_variant(sig: &Signature, a: &MoveWord, rng: &mut impl Rng) -> Option<MoveWord> {
    let k = rng.gen_range(0..=a.moves.len());
    let w = apply_moves(
        sig,
        &MoveWord {
            source: a.source.clone(),
            moves: a.moves[..k].to_vec(),
        },
    )
    .ok()?;
    let swaps: Vec<usize> = (0..w.cells.len().saturating_sub(1)).filter(|&i| swap_sign(sig, &w, i).is_some()).collect();
    let &i = swaps.choose(rng)?;
    let first = Move::swap(i, swap_sign(sig, &w, i)?);
    let mid = apply_move(sig, &w, &first).ok()?;
    let back = Move::swap(i, swap_sign(sig, &mid, i)?);
    let mut b = a.clone();
    b.moves.splice(k..k, [first, back]);
    Some(b)
}

/// Draws `pairs` word pairs over `labs` and records every verdict that
/// contradicts the invariants.
pub fn check_soundness(labs: &[Labelling], seed: u64, pairs: usize, budget: usize) -> SoundnessSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<(Labelling, Vec<VertWord>)> = labs
        .iter()
        .map(|l| {
            let l = with_twins(l);
            let sources = enumerate_orders(&l.scheme)
                .iter()
                .filter_map(|o| eval_order(&l, o).ok())
                .collect();
            (l, sources)
        })
        .filter(|(_, s): &(Labelling, Vec<VertWord>)| !s.is_empty())
        .collect();
    let mut out = SoundnessSummary::default();
    if pool.is_empty() {
        return out;
    }
    while out.pairs < pairs {
        let (lab, sources) = pool.choose(&mut rng).expect("nonempty pool");
        let sig = &lab.sig;
        let source = sources.choose(&mut rng).expect("nonempty");
        let len = rng.gen_range(0..=8);
        let a = random_word(sig, source, &mut rng, len);
        let b = match rng.gen_range(0..3) {
            0 => twin_variant(&a, &mut rng),
            1 => detour_variant(sig, &a, &mut rng),
            _ => None,
        }
        .unwrap_or_else(|| {
            let len = rng.gen_range(0..=8);
            random_word(sig, source, &mut rng, len)
        });
        out.pairs += 1;
        let same_end = apply_moves(sig, &a).ok() == apply_moves(sig, &b).ok();
        let same_cells = cell_counts(&a) == cell_counts(&b);
        match equal_up_to(sig, &a, &b, budget) {
            Ok(Verdict::Equal { .. }) => {
                out.equal += 1;
                if !same_end || !same_cells {
                    out.violations.push(format!(
                        "Equal on {:?} vs {:?}",
                        a.moves.iter().map(Move::to_string).collect::<Vec<_>>(),
                        b.moves.iter().map(Move::to_string).collect::<Vec<_>>()
                    ));
                }
            }
            Ok(Verdict::DistinctEndpoints) => {
                out.distinct += 1;
                if same_end {
                    out.violations.push("DistinctEndpoints on words with equal endpoints".into());
                }
            }
            Ok(Verdict::Unknown { .. }) => out.unknown += 1,
            Err(e) => out.violations.push(format!("search error: {e}")),
        }
    }
    out
}
