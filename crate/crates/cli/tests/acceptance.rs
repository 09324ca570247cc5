//! Acceptance suite: one pass/fail line per criterion, each run against its
//! runtime limit. Runs without the libtest harness so the lines always show.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use itertools::Itertools;
use pasting_core::glue::{
    adjacent_order_exists, build_glued, classify_composable, glued_labelling, retarget_glued, s_functor_ob, Composable,
    JChoice,
};
use pasting_core::orders::enumerate_orders;
use pasting_core::scheme::{PastingScheme, RawEdge, RawFace, RawScheme};
use pasting_core::terms::{Rule, DEFAULT_BUDGET};
use pasting_core::verify::{
    check_commute1to1, check_contractibility, check_heptagon, check_naturality1, check_octagon, check_soundness,
    corpus, corpus_labelling, heptagon_assignments, run_checks, Outcome, PathCoverage, VerdictReport,
};
use pasting_core::{CellName, EdgeId, FaceId, Labelling, VertexId};

const CORPUS_SEED: u64 = 20_240_601;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn raw(name: &str) -> RawScheme {
    let text = std::fs::read_to_string(fixtures().join(format!("{name}.scheme.json"))).unwrap();
    RawScheme::from_json(&text).unwrap()
}

fn scheme(name: &str) -> PastingScheme {
    PastingScheme::validate(&raw(name)).unwrap()
}

fn lab(name: &str) -> Labelling {
    Labelling::from_file(&fixtures().join(format!("{name}.lab.json"))).unwrap()
}

fn fid(s: &str) -> FaceId {
    FaceId::new(s)
}

fn cell(s: &str) -> CellName {
    CellName::new(s)
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// All instances Equal; returns the instance count.
fn all_equal(r: &VerdictReport) -> Result<usize, String> {
    if r.all_equal() {
        return Ok(r.instances.len());
    }
    let bad = r.instances.iter().find(|i| !matches!(i.outcome, Outcome::Equal { .. })).unwrap();
    Err(format!("{}: {} is {}", r.check, bad.instance, bad.outcome.label()))
}

fn rules_of(o: &Outcome) -> Vec<String> {
    match o {
        Outcome::Equal { rules } => rules.clone(),
        _ => Vec::new(),
    }
}

fn small_corpus(max_faces: usize) -> Vec<PastingScheme> {
    corpus(CORPUS_SEED, 100, max_faces)
}

const SCHEME_FIXTURES: [&str; 7] = [
    "stacked_bigons",
    "running",
    "series",
    "glue_row2",
    "glue_row3",
    "two_to_one",
    "double_stack",
];

// 1
fn scheme_validation() -> Check {
    let mut names: Vec<String> = SCHEME_FIXTURES.iter().map(|s| s.to_string()).collect();
    names.extend(["golden/row1.glued", "golden/row2.glued", "golden/row3.glued", "single_edge"].map(String::from));
    for n in &names {
        PastingScheme::validate(&raw(n)).map_err(|e| format!("{n}: {e:?}"))?;
    }
    type Mutation = (&'static str, &'static str, fn(&mut RawScheme), &'static str);
    fn face<'a>(r: &'a mut RawScheme, id: &str) -> &'a mut RawFace {
        r.faces.iter_mut().find(|f| f.id.as_str() == id).unwrap()
    }
    fn edge<'a>(r: &'a mut RawScheme, id: &str) -> &'a mut RawEdge {
        r.edges.iter_mut().find(|e| e.id.as_str() == id).unwrap()
    }
    fn reverse(r: &mut RawScheme, id: &str) {
        let e = edge(r, id);
        std::mem::swap(&mut e.src, &mut e.tgt);
    }
    let mutations: Vec<Mutation> = vec![
        ("stacked_bigons", "empty face bottom", |r| face(r, "F").bottom.clear(), "BadFaceBoundary"),
        ("running", "first edge dropped from a face boundary", |r| {
            let f = r.faces.iter_mut().find(|f| f.top.len() >= 2).unwrap();
            f.top.remove(0);
        }, "BadFaceBoundary"),
        ("two_to_one", "face boundary out of order", |r| face(r, "alpha1").bottom.reverse(), "BadFaceBoundary"),
        ("series", "edge dropped from outer top", |r| r.top.retain(|e| e.as_str() != "f"), "BadOuterBoundary"),
        ("series", "outer bottom out of order", |r| r.bottom.reverse(), "BadOuterBoundary"),
        ("single_edge", "empty outer top", |r| r.top.clear(), "BadOuterBoundary"),
        ("stacked_bigons", "middle edge reversed", |r| reverse(r, "mid"), "CycleDetected"),
        ("double_stack", "parallel edge reversed", |r| reverse(r, "u1"), "CycleDetected"),
        ("series", "spine edge reversed", |r| reverse(r, "f"), "MultipleSources"),
        ("stacked_bigons", "isolated vertex", |r| r.vertices.push(VertexId::new("Z")), "MultipleSources"),
        ("stacked_bigons", "dangling edge out of the source", |r| {
            r.vertices.push(VertexId::new("Z"));
            r.edges.push(RawEdge { id: EdgeId::new("sz"), src: VertexId::new("S"), tgt: VertexId::new("Z") });
        }, "MultipleSinks"),
        ("series", "face duplicated", |r| {
            let copy = RawFace { id: fid("F2"), ..face(r, "F").clone() };
            r.faces.push(copy);
        }, "RolePartitionViolation"),
        ("glue_row2", "face boundaries swapped", |r| {
            let f = face(r, "F");
            std::mem::swap(&mut f.top, &mut f.bottom);
        }, "RolePartitionViolation"),
        ("double_stack", "edge claimed by two faces from above", |r| face(r, "G").top = vec![EdgeId::new("u0")], "RolePartitionViolation"),
        ("stacked_bigons", "face turned upside down", |r| {
            let g = face(r, "G");
            g.top = vec![EdgeId::new("bot")];
            g.bottom = vec![EdgeId::new("mid")];
        }, "RolePartitionViolation"),
        ("running", "face removed", |r| { r.faces.pop(); }, "RolePartitionViolation"),
        ("running", "edge id declared twice", |r| {
            let e = r.edges[0].clone();
            r.edges.push(e);
        }, "DuplicateId"),
        ("series", "vertex id declared twice", |r| r.vertices.push(VertexId::new("A")), "DuplicateId"),
        ("series", "face id declared twice", |r| {
            let copy = face(r, "H").clone();
            r.faces.push(copy);
        }, "DuplicateId"),
        ("series", "edge to an undeclared vertex", |r| edge(r, "f").tgt = VertexId::new("Nowhere"), "UnknownVertex"),
        ("series", "face over an undeclared edge", |r| face(r, "H").top = vec![EdgeId::new("nope")], "UnknownEdge"),
        ("double_stack", "edge removed from the edge list", |r| r.edges.retain(|e| e.id.as_str() != "v1"), "UnknownEdge"),
        ("glue_row3", "chord reversed", |r| reverse(r, "yz"), "BadFaceBoundary"),
    ];
    let mut wrong = Vec::new();
    for (base, what, mutate, class) in &mutations {
        let mut r = raw(base);
        mutate(&mut r);
        match PastingScheme::validate(&r) {
            Ok(_) => wrong.push(format!("{base}/{what}: accepted")),
            Err(errs) if errs[0].class() != *class => {
                wrong.push(format!("{base}/{what}: {} instead of {class}", errs[0].class()))
            }
            Err(_) => {}
        }
    }
    ensure(wrong.is_empty(), || wrong.join("; "))?;
    Ok(format!("{} schemes valid, {} mutations rejected with the expected class", names.len(), mutations.len()))
}

/// Permutations of the faces respecting every shared bottom/top edge.
fn order_oracle(r: &RawScheme) -> BTreeSet<Vec<String>> {
    let ids: Vec<String> = r.faces.iter().map(|f| f.id.to_string()).collect();
    let before: Vec<(String, String)> = r
        .faces
        .iter()
        .cartesian_product(&r.faces)
        .filter(|(f, g)| f.id != g.id && f.bottom.iter().any(|e| g.top.contains(e)))
        .map(|(f, g)| (f.id.to_string(), g.id.to_string()))
        .collect();
    ids.iter()
        .cloned()
        .permutations(ids.len())
        .filter(|p| {
            let pos = |x: &String| p.iter().position(|y| y == x).unwrap();
            before.iter().all(|(f, g)| pos(f) < pos(g))
        })
        .collect()
}

// 2
fn order_enumeration() -> Check {
    for (name, n) in [("stacked_bigons", 1), ("running", 2), ("series", 6)] {
        let got = enumerate_orders(&scheme(name)).len();
        ensure(got == n, || format!("{name}: {got} orders, expected {n}"))?;
    }
    let mut schemes: Vec<PastingScheme> = SCHEME_FIXTURES.iter().map(|n| scheme(n)).collect();
    schemes.extend(small_corpus(6));
    for (k, s) in schemes.iter().enumerate() {
        let got: BTreeSet<Vec<String>> = enumerate_orders(s)
            .into_iter()
            .map(|o| o.faces.iter().map(|f| f.to_string()).collect())
            .collect();
        ensure(got == order_oracle(&s.to_raw()), || format!("scheme #{k} disagrees with the oracle"))?;
    }
    Ok(format!("{} schemes agree with the permutation filter", schemes.len()))
}

// 3
fn contractibility() -> Check {
    let series = check_contractibility(&lab("series"), PathCoverage::Exhaustive, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let n = all_equal(&series)?;
    let braid = Rule::R3.to_string();
    ensure(series.instances.iter().any(|i| rules_of(&i.outcome).contains(&braid)), || {
        "no braid instance on the series scheme".into()
    })?;
    let mut total = 0;
    for s in small_corpus(5) {
        let r = check_contractibility(&corpus_labelling(&s), PathCoverage::Inductive, DEFAULT_BUDGET)
            .map_err(|e| e.to_string())?;
        total += all_equal(&r)?;
    }
    Ok(format!("series: {n} path pairs Equal; corpus: {total} instances Equal, 0 Unknown"))
}

// 4
fn naturality() -> Check {
    let l = lab("running");
    for (c, case, rule) in [("Gamma", "first", Rule::R4), ("Delta", "second", Rule::R5), ("Phi", "disjoint", Rule::R2)] {
        let r = check_naturality1(&l, &cell(c), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        all_equal(&r)?;
        let hit = r
            .instances
            .iter()
            .find(|i| i.instance.ends_with(&format!("case={case}")))
            .ok_or_else(|| format!("{c}: case {case} not exercised"))?;
        let got = rules_of(&hit.outcome);
        ensure(got == vec![rule.to_string()], || format!("{c}: closed by {got:?}, expected [{rule}]"))?;
    }
    let mut total = 0;
    for s in small_corpus(6) {
        let l = corpus_labelling(&s);
        for c in l.one_to_one() {
            total += all_equal(&check_naturality1(&l, c, DEFAULT_BUDGET).map_err(|e| e.to_string())?)?;
        }
    }
    Ok(format!("running: R4/R5/R2 cases; corpus: {total} squares Equal"))
}

// 5
fn interchange_1to1() -> Check {
    let ex = check_commute1to1(&lab("stacked_bigons"), &cell("Gamma"), &cell("Delta"), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    all_equal(&ex)?;
    let got = rules_of(&ex.instances[0].outcome);
    ensure(got == vec![Rule::R2.to_string()], || format!("local interchange closed by {got:?}"))?;
    let mut total = 0;
    let mut run = |l: &Labelling, cells: &[CellName]| -> Result<(), String> {
        for (a, b) in cells.iter().tuple_combinations() {
            total += all_equal(&check_commute1to1(l, a, b, DEFAULT_BUDGET).map_err(|e| e.to_string())?)?;
            for orders in heptagon_assignments(&l.scheme) {
                total += all_equal(&check_heptagon(l, a, b, &orders, DEFAULT_BUDGET).map_err(|e| e.to_string())?)?;
            }
        }
        Ok(())
    };
    for name in ["stacked_bigons", "running", "series"] {
        let l = lab(name);
        let cells: Vec<CellName> = l.one_to_one().into_iter().cloned().collect();
        run(&l, &cells)?;
    }
    for s in small_corpus(6) {
        let l = corpus_labelling(&s);
        let cells: Vec<CellName> = l.one_to_one().into_iter().take(3).cloned().collect();
        run(&l, &cells)?;
    }
    Ok(format!("local interchange is one R2 exchange; {total} commute and heptagon instances Equal"))
}

// 6
fn classification() -> Check {
    let mut schemes: Vec<PastingScheme> = SCHEME_FIXTURES.iter().map(|n| scheme(n)).collect();
    schemes.extend(small_corpus(6));
    let (mut pairs, mut case_b) = (0, 0);
    for s in &schemes {
        let orders = enumerate_orders(s);
        for (f, g) in s.face_ids().into_iter().tuple_combinations().flat_map(|(a, b)| [(a.clone(), b.clone()), (b, a)]) {
            pairs += 1;
            let c = classify_composable(s, &f, &g).map_err(|e| e.to_string())?;
            let adj = orders.iter().any(|o| o.faces.windows(2).any(|w| w[0] == f && w[1] == g));
            ensure(adj == adjacent_order_exists(s, &f, &g).unwrap(), || format!("{f},{g}: adjacency mismatch"))?;
            ensure((c != Composable::NotComposable) == adj, || format!("{f},{g}: {c:?} but adjacency {adj}"))?;
            if let Composable::CaseB(case) = c {
                case_b += 1;
                let tau = &s.faces()[&f].bottom;
                let sigma = &s.faces()[&g].top;
                let seg = case.overlap.as_slice();
                let shared = sigma.iter().filter(|e| tau.contains(e)).count();
                ensure(
                    !seg.is_empty()
                        && shared == seg.len()
                        && tau.windows(seg.len()).any(|w| w == seg)
                        && sigma.windows(seg.len()).any(|w| w == seg),
                    || format!("{f},{g}: overlap {seg:?} is not one shared segment"),
                )?;
            }
        }
    }
    Ok(format!("{pairs} ordered face pairs, {case_b} CaseB with connected overlap"))
}

// 7
fn gluing_structure() -> Check {
    for (base, f, g, golden) in [
        ("stacked_bigons", "F", "G", "row1"),
        ("glue_row2", "F", "G", "row2"),
        ("glue_row3", "G", "F", "row3"),
    ] {
        let glued = build_glued(&scheme(base), &fid(f), &fid(g)).map_err(|e| e.to_string())?;
        let want = scheme(&format!("golden/{golden}.glued"));
        ensure(glued.glued == want, || format!("{golden}: glued scheme differs from the golden file"))?;
    }
    let s = scheme("double_stack");
    let fg = build_glued(&s, &fid("F"), &fid("G")).map_err(|e| e.to_string())?;
    let hk = build_glued(&s, &fid("H"), &fid("K")).map_err(|e| e.to_string())?;
    let fg_hk = build_glued(&fg.glued, &fid("H"), &fid("K")).map_err(|e| e.to_string())?;
    let hk_fg = build_glued(&hk.glued, &fid("F"), &fid("G")).map_err(|e| e.to_string())?;
    ensure(fg_hk.glued == hk_fg.glued, || "gluing order changes the doubly glued scheme".into())?;
    for o in enumerate_orders(&fg_hk.glued) {
        let a = s_functor_ob(&fg, &s_functor_ob(&fg_hk, &o).unwrap()).unwrap();
        let b = s_functor_ob(&hk, &s_functor_ob(&hk_fg, &o).unwrap()).unwrap();
        ensure(a == b, || format!("[{o}]: expansions differ"))?;
    }
    Ok("rows 1-3 match golden files; doubly glued schemes and expansions agree".into())
}

// 8
fn glue_compat() -> Check {
    let mut structural = 0;
    let mut total = 0;
    for name in ["glue_row2", "glue_row3", "two_to_one", "stacked_bigons", "double_stack"] {
        let l = lab(name);
        for two in l.two_to_one() {
            let Some(pasting_core::terms::Decl3::TwoToOne { faces: (f, g), .. }) = l.sig.cells.get(two) else {
                unreachable!()
            };
            let glued = build_glued(&l.scheme, f, g).map_err(|e| e.to_string())?;
            for one in l.one_to_one() {
                let Some(pasting_core::terms::Decl3::OneToOne { face, .. }) = l.sig.cells.get(one) else {
                    unreachable!()
                };
                if face == f || face == g {
                    continue;
                }
                let a = retarget_glued(&glued_labelling(&l, &glued).unwrap(), one).map_err(|e| e.to_string())?;
                let b = glued_labelling(&l.retarget(one).unwrap(), &glued).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("{name}: relabelling by {one} does not commute with gluing"))?;
                structural += 1;
            }
        }
        for r in run_checks(&l, Some("glue-compat"), DEFAULT_BUDGET, 0).map_err(|e| e.to_string())? {
            total += all_equal(&r)?;
        }
    }
    ensure(structural > 0 && total > 0, || "no instances".into())?;
    Ok(format!("{structural} structural equalities, {total} square instances Equal"))
}

// 9
fn octagon() -> Check {
    let l = lab("double_stack");
    let n = enumerate_orders(&l.scheme).len();
    let mut verdicts = Vec::new();
    for (a, b) in [("Pi", "Omega"), ("Omega", "Pi")] {
        let r = check_octagon(&l, &cell(a), &cell(b), &JChoice::ALL, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(r.instances.len() == n * JChoice::ALL.len(), || "missing instances".into())?;
        all_equal(&r)?;
        verdicts.extend(r.instances.iter().map(|i| i.outcome.label()));
    }
    ensure(verdicts.iter().all_equal(), || "verdict depends on the J-choice".into())?;
    Ok(format!("{n} start orders x {} J-choices, both roles, all Equal", JChoice::ALL.len()))
}

// 10
fn soundness() -> Check {
    let mut labs: Vec<Labelling> = ["running", "series", "stacked_bigons", "glue_row2"].map(lab).to_vec();
    labs.extend(corpus(CORPUS_SEED, 20, 4).iter().map(corpus_labelling));
    let s = check_soundness(&labs, CORPUS_SEED, 1_000, 5_000);
    ensure(s.violations.is_empty(), || s.violations.join("; "))?;
    ensure(cfg!(debug_assertions), || "debug assertions are off".into())?;
    Ok(format!(
        "{} pairs: {} Equal, {} DistinctEndpoints, {} Unknown, 0 violations",
        s.pairs, s.equal, s.distinct, s.unknown
    ))
}

// 11
fn cli_determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_pasting");
    let dir = fixtures();
    let run = |args: &[&str]| -> (i32, Vec<u8>) {
        let out = Command::new(bin).args(args).current_dir(&dir).output().expect("binary runs");
        (out.status.code().unwrap_or(-1), out.stdout)
    };
    let mut invocations: Vec<(Vec<String>, i32)> = Vec::new();
    let mut add = |args: &[&str], code: i32| invocations.push((args.iter().map(|s| s.to_string()).collect(), code));
    for name in SCHEME_FIXTURES.iter().chain(&["single_edge"]) {
        let f = format!("{name}.scheme.json");
        add(&["validate", &f], 0);
        add(&["orders", &f], 0);
        add(&["emit-dot", &f], 0);
    }
    add(&["validate", "cyclic.scheme.json"], 2);
    let orders = |name: &str| enumerate_orders(&scheme(name)).iter().map(|o| o.to_string()).collect::<Vec<_>>();
    for name in ["stacked_bigons", "running", "series", "glue_row2", "glue_row3", "two_to_one", "double_stack"] {
        let f = format!("{name}.lab.json");
        let os = orders(name);
        let (first, last) = (os[0].clone(), os[os.len() - 1].clone());
        add(&["compose", &f, "--order", &first], 0);
        add(&["gamma", &f, "--from", &first, "--to", &last], 0);
        add(&["verify", &f, "--seed", "7"], 0);
    }
    add(&["glue", "stacked_bigons.lab.json", "--faces", "F,G"], 0);
    add(&["glue", "glue_row2.lab.json", "--faces", "F,G"], 0);
    add(&["glue", "glue_row3.lab.json", "--faces", "G,F"], 0);
    add(&["glue", "double_stack.lab.json", "--faces", "F,G"], 0);
    add(&["glue", "series.lab.json", "--faces", "F,G"], 2);
    add(&["verify", "double_stack.lab.json", "--check", "octagon"], 0);
    add(&["verify", "series.lab.json", "--check", "corpus", "--seed", "3"], 0);
    add(&["verify", "series.lab.json", "--check", "contractibility", "--budget", "1"], 4);
    add(&["verify", "series.lab.json", "--check", "nonsense"], 1);
    add(&["compose", "running.lab.json"], 1);
    add(&["frobnicate"], 1);
    add(&["orders", "missing.scheme.json"], 1);

    for (args, code) in &invocations {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (c1, o1) = run(&args);
        let (c2, o2) = run(&args);
        ensure(c1 == *code, || format!("`{}` exited {c1}, expected {code}", args.join(" ")))?;
        ensure(c1 == c2 && o1 == o2, || format!("`{}` is not deterministic", args.join(" ")))?;
    }
    // specific outputs
    let (_, out) = run(&["orders", "series.scheme.json"]);
    ensure(String::from_utf8_lossy(&out).lines().count() == 6, || "series orders: not 6 lines".into())?;
    let (_, out) = run(&["validate", "cyclic.scheme.json"]);
    ensure(String::from_utf8_lossy(&out).contains("CycleDetected"), || "cyclic: no CycleDetected".into())?;
    // glue output round-trips
    let (_, out) = run(&["glue", "glue_row2.lab.json", "--faces", "F,G"]);
    let text = String::from_utf8(out).unwrap();
    let back = PastingScheme::from_json(&text).map_err(|e| e.to_string())?;
    let again = RawScheme::from_json(&back.to_raw().to_json_pretty()).unwrap();
    ensure(PastingScheme::validate(&again).unwrap() == back, || "glue output does not round-trip".into())?;
    ensure(back == scheme("golden/row2.glued"), || "glue output differs from golden".into())?;
    Ok(format!("{} invocations byte-identical with expected exit codes", invocations.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "scheme validation", limit: Duration::from_secs(1), run: scheme_validation },
        Criterion { id: 2, name: "order enumeration vs oracle", limit: Duration::from_secs(5), run: order_enumeration },
        Criterion { id: 3, name: "contractibility", limit: Duration::from_secs(30), run: contractibility },
        Criterion { id: 4, name: "naturality", limit: Duration::from_secs(10), run: naturality },
        Criterion { id: 5, name: "1-to-1 interchange and heptagon", limit: Duration::from_secs(10), run: interchange_1to1 },
        Criterion { id: 6, name: "composability classification", limit: Duration::from_secs(10), run: classification },
        Criterion { id: 7, name: "gluing structure", limit: Duration::from_secs(1), run: gluing_structure },
        Criterion { id: 8, name: "glue compatibility", limit: Duration::from_secs(10), run: glue_compat },
        Criterion { id: 9, name: "2-to-1 interchange octagon", limit: Duration::from_secs(60), run: octagon },
        Criterion { id: 10, name: "soundness guard", limit: Duration::from_secs(30), run: soundness },
        // no stated runtime; generous bound so a hang still fails
        Criterion { id: 11, name: "CLI determinism", limit: Duration::from_secs(300), run: cli_determinism },
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for c in criteria.iter().filter(|c| only.map_or(true, |o| o == c.id)) {
        let t0 = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let dt = t0.elapsed();
        let (ok, detail) = match result {
            Ok(d) if dt <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {:<32} {:>7.2}s / {:>3}s  {}",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.name,
            dt.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
