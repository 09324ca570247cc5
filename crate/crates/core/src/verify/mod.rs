//! The theorem harness.
//!
//! Each check instantiates one of the coherence results on a labelling,
//! builds the two composite move words around the relevant diagram and asks
//! [`equal_up_to`] whether they agree. Outcomes are collected per instance in
//! a [`VerdictReport`].

mod grammar;
mod legs;
mod soundness;
mod special;

use std::collections::{BTreeMap, VecDeque};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::glue::{
    adjacent_representative, build_glued, glued_labelling, retarget_glued, GlueError, GluedScheme, JChoice,
};
use crate::ids::{CellName, FaceId};
use crate::orders::{enumerate_orders, face_relations, gen_moves_with, CompOrder, GenMove};
use crate::scheme::{PastingScheme, RawScheme};
use crate::terms::{equal_up_to, gamma_word, Decl3, Labelling, Move, MoveWord, Signature, Verdict};

pub use grammar::{corpus, corpus_labelling, SchemeGrammar};
pub use legs::Leg;
pub use soundness::{check_soundness, random_word, with_twins, SoundnessSummary};
pub use special::{special_case_strategy, SpecialCandidate};

/// Longest generator path considered by the contractibility check.
pub const MAX_PATH_LEN: usize = 6;
/// Largest scheme the contractibility check accepts.
pub const MAX_CONTRACT_FACES: usize = 5;
/// Budget multiplier for the single retry after an `Unknown`.
pub const RETRY_FACTOR: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("TooManyFaces: contractibility is checked on at most {max} faces, scheme has {found}")]
    TooManyFaces { max: usize, found: usize },
    #[error("UnknownCell: `{0}`")]
    UnknownCell(CellName),
    #[error("WrongCellKind: `{0}`")]
    WrongCellKind(CellName),
    #[error("SameFace: both cells act on `{0}`")]
    SameFace(FaceId),
    #[error("{0}")]
    Glue(#[from] GlueError),
}

/// Everything needed to replay a failed instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub scheme: RawScheme,
    pub orders: Vec<String>,
    pub source: Vec<String>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome")]
pub enum Outcome {
    Equal { rules: Vec<String> },
    Unknown { visited: usize },
    Failed { witness: Box<Witness> },
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Equal { .. } => "Equal",
            Outcome::Unknown { .. } => "Unknown",
            Outcome::Failed { .. } => "Failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub instance: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Debug, Clone)]
pub struct VerdictReport {
    pub check: String,
    pub instances: Vec<Instance>,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct Line<'a> {
    check: &'a str,
    #[serde(flatten)]
    inst: &'a Instance,
}

impl VerdictReport {
    fn new(check: impl Into<String>) -> Self {
        VerdictReport {
            check: check.into(),
            instances: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn push(&mut self, instance: impl Into<String>, outcome: Outcome) {
        self.instances.push(Instance {
            instance: instance.into(),
            outcome,
        });
    }

    fn count(&self, label: &str) -> usize {
        self.instances.iter().filter(|i| i.outcome.label() == label).count()
    }

    pub fn equal(&self) -> usize {
        self.count("Equal")
    }

    pub fn unknown(&self) -> usize {
        self.count("Unknown")
    }

    pub fn failed(&self) -> usize {
        self.count("Failed")
    }

    pub fn all_equal(&self) -> bool {
        self.equal() == self.instances.len()
    }

    /// One JSON object per instance.
    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for inst in &self.instances {
            let line = Line {
                check: &self.check,
                inst,
            };
            out.push_str(&serde_json::to_string(&line).expect("report serialization cannot fail"));
            out.push('\n');
        }
        out
    }

    /// `check  instances  equal  unknown  failed`, without timing so the
    /// line is reproducible.
    pub fn summary(&self) -> String {
        format!(
            "{:<14} instances={:<5} equal={:<5} unknown={:<3} failed={}",
            self.check,
            self.instances.len(),
            self.equal(),
            self.unknown(),
            self.failed()
        )
    }

    fn extend(&mut self, other: VerdictReport) {
        self.instances.extend(other.instances);
    }
}

fn render(mw: &MoveWord) -> Vec<String> {
    mw.moves.iter().map(Move::to_string).collect()
}

fn witness(scheme: &PastingScheme, orders: &[&CompOrder], lhs: Option<&MoveWord>, rhs: Option<&MoveWord>, reason: String) -> Outcome {
    Outcome::Failed {
        witness: Box::new(Witness {
            scheme: scheme.to_raw(),
            orders: orders.iter().map(|o| o.to_string()).collect(),
            source: lhs
                .map(|w| w.source.cells.iter().map(|c| c.to_string()).collect())
                .unwrap_or_default(),
            lhs: lhs.map(render).unwrap_or_default(),
            rhs: rhs.map(render).unwrap_or_default(),
            reason,
        }),
    }
}

/// Decides one instance, retrying once with a larger budget on `Unknown`.
pub fn decide(sig: &Signature, scheme: &PastingScheme, orders: &[&CompOrder], a: &MoveWord, b: &MoveWord, budget: usize) -> Outcome {
    let mut verdict = equal_up_to(sig, a, b, budget);
    if matches!(verdict, Ok(Verdict::Unknown { .. })) {
        verdict = equal_up_to(sig, a, b, budget.saturating_mul(RETRY_FACTOR));
    }
    match verdict {
        Ok(Verdict::Equal { trace }) => Outcome::Equal {
            rules: trace.iter().map(|s| s.rule.to_string()).collect(),
        },
        Ok(Verdict::Unknown { visited }) => Outcome::Unknown { visited },
        Ok(Verdict::DistinctEndpoints) => witness(scheme, orders, Some(a), Some(b), "DistinctEndpoints".into()),
        Err(e) => witness(scheme, orders, Some(a), Some(b), e.to_string()),
    }
}

/// Builds both legs and decides; construction errors become failures.
fn judge(
    lab: &Labelling,
    orders: &[&CompOrder],
    lhs: Result<MoveWord, String>,
    rhs: Result<MoveWord, String>,
    budget: usize,
) -> Outcome {
    match (lhs, rhs) {
        (Ok(a), Ok(b)) => decide(&lab.sig, &lab.scheme, orders, &a, &b, budget),
        (Err(e), _) | (_, Err(e)) => witness(&lab.scheme, orders, None, None, e),
    }
}

fn one_to_one_face(lab: &Labelling, cell: &CellName) -> Result<FaceId, VerifyError> {
    match lab.sig.cells.get(cell) {
        Some(Decl3::OneToOne { face, .. }) => Ok(face.clone()),
        Some(_) => Err(VerifyError::WrongCellKind(cell.clone())),
        None => Err(VerifyError::UnknownCell(cell.clone())),
    }
}

fn two_to_one_faces(lab: &Labelling, cell: &CellName) -> Result<(FaceId, FaceId), VerifyError> {
    match lab.sig.cells.get(cell) {
        Some(Decl3::TwoToOne { faces, .. }) => Ok(faces.clone()),
        Some(_) => Err(VerifyError::WrongCellKind(cell.clone())),
        None => Err(VerifyError::UnknownCell(cell.clone())),
    }
}

fn finish(mut r: VerdictReport, t0: Instant) -> VerdictReport {
    r.elapsed = t0.elapsed();
    r
}

/// How the contractibility check covers the paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathCoverage {
    /// Every path up to the length bound is compared against the shortest
    /// path with the same endpoints.
    Exhaustive,
    /// Every shortest path extended by one generator is compared against the
    /// shortest path to its new endpoint. By induction on length this covers
    /// the same pairs with far fewer searches.
    Inductive,
}

/// Any two generator paths between the same orders give equal interchanger
/// words.
pub fn check_contractibility(lab: &Labelling, coverage: PathCoverage, budget: usize) -> Result<VerdictReport, VerifyError> {
    let t0 = Instant::now();
    let n = lab.scheme.faces().len();
    if n > MAX_CONTRACT_FACES {
        return Err(VerifyError::TooManyFaces {
            max: MAX_CONTRACT_FACES,
            found: n,
        });
    }
    let rel = face_relations(&lab.scheme);
    let mut report = VerdictReport::new("contractibility");
    for start in enumerate_orders(&lab.scheme) {
        // shortest paths from `start`, breadth first
        let mut shortest: BTreeMap<CompOrder, Vec<GenMove>> = BTreeMap::new();
        shortest.insert(start.clone(), Vec::new());
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(o) = queue.pop_front() {
            let path = shortest[&o].clone();
            if path.len() >= MAX_PATH_LEN {
                continue;
            }
            for m in gen_moves_with(&rel, &o) {
                let t = m.target();
                if !shortest.contains_key(&t) {
                    let mut p = path.clone();
                    p.push(m);
                    shortest.insert(t.clone(), p);
                    queue.push_back(t);
                }
            }
        }
        let compare = |path: &[GenMove], end: &CompOrder, report: &mut VerdictReport| {
            let Some(reference) = shortest.get(end) else {
                return;
            };
            if reference.as_slice() == path {
                return;
            }
            let name = format!("[{start}] {} vs {}", indices(path), indices(reference));
            let lhs = gamma_word(lab, &start, path).map_err(|e| e.to_string());
            let rhs = gamma_word(lab, &start, reference).map_err(|e| e.to_string());
            let outcome = judge(lab, &[&start, end], lhs, rhs, budget);
            report.push(name, outcome);
        };
        match coverage {
            PathCoverage::Exhaustive => {
                let mut stack: Vec<(CompOrder, Vec<GenMove>)> = vec![(start.clone(), Vec::new())];
                while let Some((o, path)) = stack.pop() {
                    compare(&path, &o, &mut report);
                    if path.len() < MAX_PATH_LEN {
                        for m in gen_moves_with(&rel, &o).into_iter().rev() {
                            let mut p = path.clone();
                            let t = m.target();
                            p.push(m);
                            stack.push((t, p));
                        }
                    }
                }
            }
            PathCoverage::Inductive => {
                let ends: Vec<(CompOrder, Vec<GenMove>)> =
                    shortest.iter().map(|(o, p)| (o.clone(), p.clone())).collect();
                for (o, path) in ends {
                    if path.len() >= MAX_PATH_LEN {
                        continue;
                    }
                    for m in gen_moves_with(&rel, &o) {
                        let t = m.target();
                        let mut p = path.clone();
                        p.push(m);
                        compare(&p, &t, &mut report);
                    }
                }
            }
        }
    }
    Ok(finish(report, t0))
}

fn indices(path: &[GenMove]) -> String {
    let v: Vec<String> = path.iter().map(|m| m.index.to_string()).collect();
    format!("<{}>", v.join(" "))
}

/// Which face of a swapped pair carries the cell, named after the proof
/// cases of naturality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NatCase {
    First,
    Second,
    Disjoint,
}

impl NatCase {
    fn of(face: &FaceId, m: &GenMove) -> NatCase {
        if m.at.faces[m.index] == *face {
            NatCase::First
        } else if m.at.faces[m.index + 1] == *face {
            NatCase::Second
        } else {
            NatCase::Disjoint
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            NatCase::First => "first",
            NatCase::Second => "second",
            NatCase::Disjoint => "disjoint",
        }
    }
}

/// Naturality of `Γ*` on every generating move: `[Γ*; γ]` against `[γ; Γ*]`.
pub fn check_naturality1(lab: &Labelling, cell: &CellName, budget: usize) -> Result<VerdictReport, VerifyError> {
    let t0 = Instant::now();
    let face = one_to_one_face(lab, cell)?;
    let rel = face_relations(&lab.scheme);
    let mut report = VerdictReport::new("naturality");
    for o in enumerate_orders(&lab.scheme) {
        for m in gen_moves_with(&rel, &o) {
            let case = NatCase::of(&face, &m);
            let lhs = Leg::start(lab, &o).and_then(|l| l.nat1(cell)).and_then(|l| l.swap(m.index)).map(Leg::finish);
            let rhs = Leg::start(lab, &o).and_then(|l| l.swap(m.index)).and_then(|l| l.nat1(cell)).map(Leg::finish);
            let outcome = judge(lab, &[&o], lhs, rhs, budget);
            report.push(format!("{cell} [{o}] swap {} case={}", m.index, case.as_str()), outcome);
        }
    }
    Ok(finish(report, t0))
}

/// Two one-to-one cells on different faces commute at every order.
pub fn check_commute1to1(lab: &Labelling, c1: &CellName, c2: &CellName, budget: usize) -> Result<VerdictReport, VerifyError> {
    let t0 = Instant::now();
    let f1 = one_to_one_face(lab, c1)?;
    if f1 == one_to_one_face(lab, c2)? {
        return Err(VerifyError::SameFace(f1));
    }
    let mut report = VerdictReport::new("commute");
    for o in enumerate_orders(&lab.scheme) {
        let lhs = Leg::start(lab, &o).and_then(|l| l.nat1(c1)).and_then(|l| l.nat1(c2)).map(Leg::finish);
        let rhs = Leg::start(lab, &o).and_then(|l| l.nat1(c2)).and_then(|l| l.nat1(c1)).map(Leg::finish);
        report.push(format!("{c1},{c2} [{o}]"), judge(lab, &[&o], lhs, rhs, budget));
    }
    Ok(finish(report, t0))
}

/// The orders `X, A, B, C, D, Y` of a heptagon instance.
pub type HeptagonOrders = [CompOrder; 6];

/// Deterministic assignments: orders cycled in enumeration order, the same
/// cycled backwards, and the fully degenerate one.
pub fn heptagon_assignments(scheme: &PastingScheme) -> Vec<HeptagonOrders> {
    let orders = enumerate_orders(scheme);
    let n = orders.len();
    let pick = |f: &dyn Fn(usize) -> usize| -> HeptagonOrders { std::array::from_fn(|k| orders[f(k) % n].clone()) };
    let mut out = vec![pick(&|k| k), pick(&|k| n * 6 - 1 - k), pick(&|_| 0)];
    out.dedup();
    out
}

/// The heptagon relating `Γ*` and `Δ*` through arbitrary intermediate
/// orders: the outer boundary and each of its seven inner regions.
pub fn check_heptagon(
    lab: &Labelling,
    c1: &CellName,
    c2: &CellName,
    orders: &HeptagonOrders,
    budget: usize,
) -> Result<VerdictReport, VerifyError> {
    let t0 = Instant::now();
    let f1 = one_to_one_face(lab, c1)?;
    if f1 == one_to_one_face(lab, c2)? {
        return Err(VerifyError::SameFace(f1));
    }
    let [x, a, b, c, d, y] = orders;
    let lab1 = lab.retarget(c1).map_err(GlueError::from)?;
    let lab12 = lab1.retarget(c2).map_err(GlueError::from)?;
    let tag = orders.iter().map(|o| format!("[{o}]")).collect::<Vec<_>>().join("");
    let mut report = VerdictReport::new("heptagon");
    let mut region = |name: &str, l: &Labelling, lhs: Result<MoveWord, String>, rhs: Result<MoveWord, String>| {
        let outcome = judge(l, &orders.iter().collect::<Vec<_>>(), lhs, rhs, budget);
        report.push(format!("{c1},{c2} {tag} {name}"), outcome);
    };
    let s = |l: &Labelling, o: &CompOrder| Leg::start(l, o);

    region(
        "outer",
        lab,
        s(lab, x)
            .and_then(|l| l.gamma_to(a))
            .and_then(|l| l.nat1(c1))
            .and_then(|l| l.gamma_to(b))
            .and_then(|l| l.nat1(c2))
            .and_then(|l| l.gamma_to(y))
            .map(Leg::finish),
        s(lab, x)
            .and_then(|l| l.gamma_to(c))
            .and_then(|l| l.nat1(c2))
            .and_then(|l| l.gamma_to(d))
            .and_then(|l| l.nat1(c1))
            .and_then(|l| l.gamma_to(y))
            .map(Leg::finish),
    );
    region(
        "(1)",
        lab,
        s(lab, x)
            .and_then(|l| l.gamma_to(a))
            .and_then(|l| l.gamma_to(b))
            .and_then(|l| l.gamma_to(d))
            .and_then(|l| l.gamma_to(c))
            .map(Leg::finish),
        s(lab, x).and_then(|l| l.gamma_to(c)).map(Leg::finish),
    );
    region(
        "(2)",
        lab,
        s(lab, a).and_then(|l| l.nat1(c1)).and_then(|l| l.gamma_to(b)).map(Leg::finish),
        s(lab, a).and_then(|l| l.gamma_to(b)).and_then(|l| l.nat1(c1)).map(Leg::finish),
    );
    region(
        "(3)",
        lab,
        s(lab, b).and_then(|l| l.nat1(c1)).and_then(|l| l.gamma_to(d)).map(Leg::finish),
        s(lab, b).and_then(|l| l.gamma_to(d)).and_then(|l| l.nat1(c1)).map(Leg::finish),
    );
    region(
        "(4)",
        &lab1,
        s(&lab1, b).and_then(|l| l.nat1(c2)).and_then(|l| l.gamma_to(d)).map(Leg::finish),
        s(&lab1, b).and_then(|l| l.gamma_to(d)).and_then(|l| l.nat1(c2)).map(Leg::finish),
    );
    region(
        "(5)",
        &lab12,
        s(&lab12, b).and_then(|l| l.gamma_to(y)).map(Leg::finish),
        s(&lab12, b).and_then(|l| l.gamma_to(d)).and_then(|l| l.gamma_to(y)).map(Leg::finish),
    );
    region(
        "(6)",
        lab,
        s(lab, d).and_then(|l| l.nat1(c1)).and_then(|l| l.nat1(c2)).map(Leg::finish),
        s(lab, d).and_then(|l| l.nat1(c2)).and_then(|l| l.nat1(c1)).map(Leg::finish),
    );
    region(
        "(7)",
        lab,
        s(lab, d)
            .and_then(|l| l.gamma_to(c))
            .and_then(|l| l.nat1(c2))
            .and_then(|l| l.gamma_to(d))
            .map(Leg::finish),
        s(lab, d).and_then(|l| l.nat1(c2)).map(Leg::finish),
    );
    Ok(finish(report, t0))
}

/// Relabelling commutes with gluing, and `Γ*` is compatible with the
/// comparison `γ` into the glued scheme, for every order and J-choice.
pub fn check_glue_compat(
    lab: &Labelling,
    g: &GluedScheme,
    cell: &CellName,
    choices: &[JChoice],
    budget: usize,
) -> Result<VerdictReport, VerifyError> {
    let t0 = Instant::now();
    let face = one_to_one_face(lab, cell)?;
    if face == g.origin_f || face == g.origin_g {
        return Err(GlueError::LabelOnMergedFace {
            cell: cell.to_string(),
            face,
        }
        .into());
    }
    let mut report = VerdictReport::new("glue-compat");

    let via_glue = retarget_glued(&glued_labelling(lab, g)?, cell)?;
    let via_retarget = glued_labelling(&lab.retarget(cell).map_err(GlueError::from)?, g)?;
    let structural = if via_glue == via_retarget {
        Outcome::Equal { rules: Vec::new() }
    } else {
        witness(&lab.scheme, &[], None, None, "relabelled glued labellings differ".into())
    };
    report.push(format!("{cell} on {} structural", g.merged), structural);

    for o in enumerate_orders(&lab.scheme) {
        for &choice in choices {
            let rep = adjacent_representative(g, &o, choice)?;
            let lhs = Leg::start(lab, &o).and_then(|l| l.gamma_to(&rep)).and_then(|l| l.nat1(cell)).map(Leg::finish);
            let rhs = Leg::start(lab, &o).and_then(|l| l.nat1(cell)).and_then(|l| l.gamma_to(&rep)).map(Leg::finish);
            report.push(
                format!("{cell} on {} [{o}] J={choice}", g.merged),
                judge(lab, &[&o, &rep], lhs, rhs, budget),
            );
        }
    }
    Ok(finish(report, t0))
}

/// The octagon for two two-to-one cells on disjoint pairs: gluing `F, G`
/// then `H, K` against the reverse, for every start order and J-choice.
pub fn check_octagon(
    lab: &Labelling,
    pi: &CellName,
    omega: &CellName,
    choices: &[JChoice],
    budget: usize,
) -> Result<VerdictReport, VerifyError> {
    let t0 = Instant::now();
    let (f, g) = two_to_one_faces(lab, pi)?;
    let (h, k) = two_to_one_faces(lab, omega)?;
    if [&f, &g].iter().any(|x| **x == h || **x == k) {
        return Err(GlueError::PairsNotDisjoint(format!("({f}, {g}) and ({h}, {k}) share a face")).into());
    }
    let scheme = &lab.scheme;
    let g_fg = build_glued(scheme, &f, &g)?;
    let g_hk = build_glued(scheme, &h, &k)?;
    let g_fg_hk = build_glued(&g_fg.glued, &h, &k)?;
    let g_hk_fg = build_glued(&g_hk.glued, &f, &g)?;
    if g_fg_hk.glued != g_hk_fg.glued {
        return Err(GlueError::UnsupportedConfiguration("gluing order changes the doubly glued scheme".into()).into());
    }
    let mut report = VerdictReport::new("octagon");
    for x in enumerate_orders(scheme) {
        for &choice in choices {
            let lhs = Leg::start(lab, &x)
                .and_then(|l| l.gamma_to_adjacent(&g_fg, choice))
                .and_then(|l| l.nat2(&g_fg, pi))
                .and_then(|l| l.gamma_to_adjacent(&g_fg_hk, choice))
                .and_then(|l| l.nat2(&g_fg_hk, omega));
            let rhs = Leg::start(lab, &x)
                .and_then(|l| l.gamma_to_adjacent(&g_hk, choice))
                .and_then(|l| l.nat2(&g_hk, omega))
                .and_then(|l| l.gamma_to_adjacent(&g_hk_fg, choice))
                .and_then(|l| l.nat2(&g_hk_fg, pi));
            let (lhs, rhs) = match (lhs, rhs) {
                (Ok(l), Ok(r)) => {
                    if l.labelling() != r.labelling() {
                        report.push(
                            format!("{pi},{omega} [{x}] J={choice}"),
                            witness(scheme, &[&x], None, None, "composites end in different labellings".into()),
                        );
                        continue;
                    }
                    let end = l.order().clone();
                    (Ok(l.finish()), r.gamma_to(&end).map(Leg::finish))
                }
                (l, r) => (l.map(Leg::finish), r.map(Leg::finish)),
            };
            report.push(format!("{pi},{omega} [{x}] J={choice}"), judge(lab, &[&x], lhs, rhs, budget));
        }
    }
    Ok(finish(report, t0))
}

/// Names of the checks [`run_checks`] knows.
pub const CHECK_NAMES: [&str; 7] = [
    "contractibility",
    "naturality",
    "commute",
    "heptagon",
    "glue-compat",
    "octagon",
    "corpus",
];

/// Runs every check that applies to `lab` (or only `only`).
pub fn run_checks(lab: &Labelling, only: Option<&str>, budget: usize, seed: u64) -> Result<Vec<VerdictReport>, VerifyError> {
    let wants = |name: &str| only.map_or(true, |o| o == name);
    let ones: Vec<CellName> = lab.one_to_one().into_iter().cloned().collect();
    let twos: Vec<CellName> = lab.two_to_one().into_iter().cloned().collect();
    let face_of = |c: &CellName| one_to_one_face(lab, c);
    let mut pairs = Vec::new();
    for (i, a) in ones.iter().enumerate() {
        for b in &ones[i + 1..] {
            if face_of(a)? != face_of(b)? {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }

    let mut out = Vec::new();
    let mut merge = |name: &str, parts: Vec<VerdictReport>| {
        let mut r = VerdictReport::new(name);
        for p in parts {
            r.elapsed += p.elapsed;
            r.extend(p);
        }
        out.push(r);
    };
    if wants("contractibility") && lab.scheme.faces().len() <= MAX_CONTRACT_FACES {
        merge("contractibility", vec![check_contractibility(lab, PathCoverage::Exhaustive, budget)?]);
    }
    if wants("naturality") {
        let parts = ones.iter().map(|c| check_naturality1(lab, c, budget)).collect::<Result<_, _>>()?;
        merge("naturality", parts);
    }
    if wants("commute") {
        let parts = pairs.iter().map(|(a, b)| check_commute1to1(lab, a, b, budget)).collect::<Result<_, _>>()?;
        merge("commute", parts);
    }
    if wants("heptagon") {
        let mut parts = Vec::new();
        for (a, b) in &pairs {
            for orders in heptagon_assignments(&lab.scheme) {
                parts.push(check_heptagon(lab, a, b, &orders, budget)?);
            }
        }
        merge("heptagon", parts);
    }
    if wants("glue-compat") {
        let mut parts = Vec::new();
        for two in &twos {
            let (f, g) = two_to_one_faces(lab, two)?;
            let glued = build_glued(&lab.scheme, &f, &g)?;
            for one in &ones {
                let face = face_of(one)?;
                if face != f && face != g {
                    parts.push(check_glue_compat(lab, &glued, one, &JChoice::ALL, budget)?);
                }
            }
        }
        merge("glue-compat", parts);
    }
    if wants("octagon") {
        let mut parts = Vec::new();
        for (i, a) in twos.iter().enumerate() {
            for b in &twos[i + 1..] {
                match check_octagon(lab, a, b, &JChoice::ALL, budget) {
                    Err(VerifyError::Glue(GlueError::PairsNotDisjoint(_))) if only.is_none() => {}
                    r => parts.push(r?),
                }
            }
        }
        merge("octagon", parts);
    }
    if only == Some("corpus") {
        out.push(check_corpus(seed, CORPUS_SIZE, CORPUS_MAX_FACES, budget));
    }
    Ok(out)
}

pub const CORPUS_SIZE: usize = 100;
pub const CORPUS_MAX_FACES: usize = 6;

/// Contractibility (schemes up to five faces), naturality and pairwise
/// commutation on a seeded random corpus.
pub fn check_corpus(seed: u64, count: usize, max_faces: usize, budget: usize) -> VerdictReport {
    let t0 = Instant::now();
    let mut report = VerdictReport::new("corpus");
    for (n, scheme) in corpus(seed, count, max_faces).into_iter().enumerate() {
        let lab = corpus_labelling(&scheme);
        let mut parts = Vec::new();
        if scheme.faces().len() <= MAX_CONTRACT_FACES {
            parts.push(check_contractibility(&lab, PathCoverage::Inductive, budget));
        }
        let ones: Vec<CellName> = lab.one_to_one().into_iter().cloned().collect();
        for c in &ones {
            parts.push(check_naturality1(&lab, c, budget));
        }
        for w in ones.windows(2) {
            parts.push(check_commute1to1(&lab, &w[0], &w[1], budget));
        }
        for part in parts {
            match part {
                Ok(r) => {
                    for inst in r.instances {
                        report.push(format!("#{n} {}: {}", r.check, inst.instance), inst.outcome);
                    }
                }
                Err(e) => report.push(format!("#{n}"), witness(&scheme, &[], None, None, e.to_string())),
            }
        }
    }
    finish(report, t0)
}
