//! Bounded congruence search on move words.
//!
//! Two words with the same endpoints are connected by rewriting with the
//! rules below, searched breadth-first from both ends at once. Each rule is
//! an instance of a Gray-category axiom; every candidate rewrite is replayed
//! on the actual intermediate word before it is accepted, so swap signs are
//! recomputed and endpoints are preserved by construction.
//!
//! * R1: `Swap(i)·Swap(i)` cancels (an interchanger followed by its inverse).
//! * R2: moves on disjoint cells commute (strict local interchange).
//! * R3: `S(i)S(i+1)S(i) = S(i+1)S(i)S(i+1)`.
//! * R4: `Gen3(i)·Swap(i) = Swap(i)·Gen3(i+1)` (γ natural in its first argument).
//! * R5: `Gen3(i+1)·Swap(i) = Swap(i)·Gen3(i)` (γ natural in its second argument).
//! * R6: a cell swapped past both halves of a pasted pair, then merged, equals
//!   merging first and swapping past the merged cell.

use std::collections::HashMap;
use std::fmt;

use super::{apply_move, swap_sign_of, Move, MoveWord, Signature, TermError, VertWord};

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One rewrite, at move position `at` of the word it was applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleStep {
    pub rule: Rule,
    pub at: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Connected; `trace` rewrites the first word into the second.
    Equal { trace: Vec<RuleStep> },
    /// Same endpoints, but no connection found within the budget.
    Unknown { visited: usize },
    DistinctEndpoints,
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Equal { .. } => "Equal",
            Verdict::Unknown { .. } => "Unknown",
            Verdict::DistinctEndpoints => "DistinctEndpoints",
        }
    }

    pub fn rules(&self) -> Vec<Rule> {
        match self {
            Verdict::Equal { trace } => trace.iter().map(|s| s.rule).collect(),
            _ => Vec::new(),
        }
    }
}

/// Intermediate words `W_0 … W_n` of a move list.
fn prefixes(sig: &Signature, source: &VertWord, moves: &[Move]) -> Vec<VertWord> {
    let mut out = Vec::with_capacity(moves.len() + 1);
    out.push(source.clone());
    for m in moves {
        let next = apply_move(sig, out.last().expect("nonempty"), m)
            .unwrap_or_else(|e| panic!("search state is not applicable at {m}: {e}"));
        out.push(next);
    }
    out
}

/// Replays `cand` from `from`, fixing swap signs. Returns the signed moves
/// when they reach `to`.
fn resolve(sig: &Signature, from: &VertWord, cand: &[Move], to: &VertWord) -> Option<Vec<Move>> {
    let mut cur = from.clone();
    let mut out = Vec::with_capacity(cand.len());
    for m in cand {
        let m = match m {
            Move::Swap { index, .. } => Move::swap(*index, swap_sign_of(sig, &cur, *index)?),
            other => other.clone(),
        };
        cur = apply_move(sig, &cur, &m).ok()?;
        out.push(m);
    }
    (cur == *to).then_some(out)
}

/// Exchange of two consecutive moves acting on disjoint cells.
fn exchange(m1: &Move, m2: &Move) -> Option<[Move; 2]> {
    let (a1, a2) = (m1.index() as isize, m2.index() as isize);
    let (in1, out1) = (m1.width_in() as isize, m1.width_out() as isize);
    let (in2, out2) = (m2.width_in() as isize, m2.width_out() as isize);
    if a2 + in2 <= a1 {
        let shifted = a1 + out2 - in2;
        Some([m2.clone(), m1.with_index(shifted as usize)])
    } else if a2 >= a1 + out1 {
        let shifted = a2 - out1 + in1;
        Some([m2.with_index(shifted as usize), m1.clone()])
    } else {
        None
    }
}

fn s(i: usize) -> Move {
    // sign is fixed up by `resolve`
    Move::swap(i, super::Sign::Plus)
}

/// Candidate rewrites of the window starting at `k`: `(rule, window length, replacement)`.
fn candidates(moves: &[Move], k: usize) -> Vec<(Rule, usize, Vec<Move>)> {
    use Move::*;
    let mut out = Vec::new();
    let w = &moves[k..];
    if w.len() >= 2 {
        match (&w[0], &w[1]) {
            (Swap { index: i, .. }, Swap { index: j, .. }) if i == j => out.push((Rule::R1, 2, vec![])),
            _ => {}
        }
        if let Some(pair) = exchange(&w[0], &w[1]) {
            out.push((Rule::R2, 2, pair.to_vec()));
        }
        match (&w[0], &w[1]) {
            (Gen3 { index: i, cell }, Swap { index: j, .. }) if i == j => {
                out.push((Rule::R4, 2, vec![s(*i), Move::gen3(i + 1, cell.clone())]));
            }
            (Gen3 { index: i, cell }, Swap { index: j, .. }) if *i == j + 1 => {
                out.push((Rule::R5, 2, vec![s(*j), Move::gen3(*j, cell.clone())]));
            }
            (Swap { index: j, .. }, Gen3 { index: i, cell }) if *i == j + 1 => {
                out.push((Rule::R4, 2, vec![Move::gen3(*j, cell.clone()), s(*j)]));
            }
            (Swap { index: j, .. }, Gen3 { index: i, cell }) if i == j => {
                out.push((Rule::R5, 2, vec![Move::gen3(j + 1, cell.clone()), s(*j)]));
            }
            (Gen3Pair { index: i, cell }, Swap { index: j, .. }) if *j + 1 == *i => {
                // merged cell at i, outside cell at i-1 moves past it
                out.push((Rule::R6, 2, vec![s(*j), s(*i), Move::gen3_pair(*j, cell.clone())]));
            }
            (Gen3Pair { index: i, cell }, Swap { index: j, .. }) if i == j => {
                out.push((Rule::R6, 2, vec![s(i + 1), s(*i), Move::gen3_pair(i + 1, cell.clone())]));
            }
            _ => {}
        }
    }
    if w.len() >= 3 {
        match (&w[0], &w[1], &w[2]) {
            (Swap { index: i, .. }, Swap { index: j, .. }, Swap { index: k2, .. })
                if i == k2 && i.abs_diff(*j) == 1 =>
            {
                out.push((Rule::R3, 3, vec![s(*j), s(*i), s(*j)]));
            }
            _ => {}
        }
        match (&w[0], &w[1], &w[2]) {
            (Swap { index: a, .. }, Swap { index: b, .. }, Gen3Pair { index: c, cell })
                if *b == a + 1 && c == a =>
            {
                out.push((Rule::R6, 3, vec![Move::gen3_pair(*b, cell.clone()), s(*a)]));
            }
            (Swap { index: a, .. }, Swap { index: b, .. }, Gen3Pair { index: c, cell })
                if *a == b + 1 && c == a =>
            {
                out.push((Rule::R6, 3, vec![Move::gen3_pair(*b, cell.clone()), s(*b)]));
            }
            _ => {}
        }
    }
    out
}

/// All single-rule neighbours of a move list.
fn neighbours(sig: &Signature, source: &VertWord, moves: &[Move]) -> Vec<(Vec<Move>, RuleStep)> {
    let words = prefixes(sig, source, moves);
    let mut out = Vec::new();
    for k in 0..moves.len() {
        for (rule, len, cand) in candidates(moves, k) {
            let Some(fixed) = resolve(sig, &words[k], &cand, &words[k + len]) else {
                continue;
            };
            let mut next = Vec::with_capacity(moves.len() - len + fixed.len());
            next.extend_from_slice(&moves[..k]);
            next.extend(fixed);
            next.extend_from_slice(&moves[k + len..]);
            debug_assert_eq!(
                prefixes(sig, source, &next).last(),
                words.last(),
                "{rule} at {k} changed the endpoint"
            );
            out.push((next, RuleStep { rule, at: k }));
        }
    }
    out
}

struct Side {
    nodes: Vec<(Vec<Move>, usize, Option<RuleStep>)>,
    index: HashMap<Vec<Move>, usize>,
    frontier: Vec<usize>,
}

impl Side {
    fn new(start: Vec<Move>) -> Self {
        let mut index = HashMap::new();
        index.insert(start.clone(), 0);
        Side {
            nodes: vec![(start, 0, None)],
            index,
            frontier: vec![0],
        }
    }

    /// Rule steps from the root to node `at`.
    fn path(&self, mut at: usize) -> Vec<RuleStep> {
        let mut out = Vec::new();
        while let (_, parent, Some(step)) = &self.nodes[at] {
            out.push(*step);
            at = *parent;
        }
        out.reverse();
        out
    }
}

/// Decides whether two move words out of the same source denote the same
/// 3-cell, visiting at most `budget` states.
pub fn equal_up_to(sig: &Signature, a: &MoveWord, b: &MoveWord, budget: usize) -> Result<Verdict, TermError> {
    if a.source != b.source {
        return Ok(Verdict::DistinctEndpoints);
    }
    let end_a = super::apply_moves(sig, a)?;
    let end_b = super::apply_moves(sig, b)?;
    if end_a != end_b {
        return Ok(Verdict::DistinctEndpoints);
    }
    if a.moves == b.moves {
        return Ok(Verdict::Equal { trace: Vec::new() });
    }
    let source = &a.source;
    let mut sides = [Side::new(a.moves.clone()), Side::new(b.moves.clone())];
    let mut visited = 2;
    loop {
        let (fa, fb) = (sides[0].frontier.len(), sides[1].frontier.len());
        if fa == 0 && fb == 0 {
            return Ok(Verdict::Unknown { visited });
        }
        let grow = if fb == 0 || (fa != 0 && fa <= fb) { 0 } else { 1 };
        let frontier = std::mem::take(&mut sides[grow].frontier);
        let mut next = Vec::new();
        for at in frontier {
            let state = sides[grow].nodes[at].0.clone();
            for (n, step) in neighbours(sig, source, &state) {
                if sides[grow].index.contains_key(&n) {
                    continue;
                }
                if let Some(&meet) = sides[1 - grow].index.get(&n) {
                    let mut here = sides[grow].path(at);
                    here.push(step);
                    let mut there = sides[1 - grow].path(meet);
                    there.reverse();
                    let trace = if grow == 0 {
                        here.into_iter().chain(there).collect()
                    } else {
                        there.reverse();
                        let mut t = there;
                        here.reverse();
                        t.extend(here);
                        t
                    };
                    return Ok(Verdict::Equal { trace });
                }
                let id = sides[grow].nodes.len();
                sides[grow].nodes.push((n.clone(), at, Some(step)));
                sides[grow].index.insert(n, id);
                next.push(id);
                visited += 1;
                if visited >= budget {
                    return Ok(Verdict::Unknown { visited });
                }
            }
        }
        sides[grow].frontier = next;
    }
}
