use super::*;
use crate::ids::{CellName, EdgeId};
use crate::orders::enumerate_orders;
use crate::terms::{apply_move, eval_order};
use crate::testutil::{lab, scheme};

fn p(ids: &[&str]) -> Path {
    ids.iter().map(|s| EdgeId::from(*s)).collect()
}

fn fid(s: &str) -> FaceId {
    FaceId::from(s)
}

fn order(s: &str) -> CompOrder {
    CompOrder::parse(s)
}

#[test]
fn stacked_bigons_are_shape_one() {
    let s = scheme("stacked_bigons");
    let c = classify_composable(&s, &fid("F"), &fid("G")).unwrap();
    assert_eq!(
        c,
        Composable::CaseB(ShapeCase {
            shape: Shape::Shape1,
            i: vec![],
            j: vec![],
            overlap: p(&["mid"])
        })
    );
    assert_eq!(classify_composable(&s, &fid("G"), &fid("F")).unwrap(), Composable::NotComposable);
    assert!(adjacent_order_exists(&s, &fid("F"), &fid("G")).unwrap());
    assert!(!adjacent_order_exists(&s, &fid("G"), &fid("F")).unwrap());
    let g = build_glued(&s, &fid("F"), &fid("G")).unwrap();
    let merged = &g.glued.faces()[&fid("F#G")];
    assert_eq!((merged.top.clone(), merged.bottom.clone()), (p(&["top"]), p(&["bot"])));
    assert_eq!(g.glued.edges().len(), 2);
}

#[test]
fn series_pair_is_case_a() {
    let s = scheme("series");
    assert_eq!(classify_composable(&s, &fid("F"), &fid("G")).unwrap(), Composable::CaseA);
    assert!(adjacent_order_exists(&s, &fid("F"), &fid("G")).unwrap());
    assert!(matches!(build_glued(&s, &fid("F"), &fid("G")), Err(GlueError::NotCaseB { .. })));
}

#[test]
fn second_table_row_example() {
    let s = scheme("glue_row2");
    let Composable::CaseB(case) = classify_composable(&s, &fid("F"), &fid("G")).unwrap() else {
        panic!("expected case B");
    };
    assert_eq!(case.shape, Shape::Shape1);
    assert_eq!((case.i.clone(), case.j.clone()), (vec![], p(&["zw"])));
    let g = build_glued(&s, &fid("F"), &fid("G")).unwrap();
    let merged = &g.glued.faces()[&fid("F#G")];
    assert_eq!(merged.top, p(&["xy", "yz", "zw"]));
    assert_eq!(merged.bottom, p(&["xw"]));
    assert_eq!(g.glued.vertices().len(), 4);
    assert!(g.glued.edge(&"xz".into()).is_none());
}

#[test]
fn third_table_row_example() {
    let s = scheme("glue_row3");
    let Composable::CaseB(case) = classify_composable(&s, &fid("G"), &fid("F")).unwrap() else {
        panic!("expected case B");
    };
    assert_eq!(case.shape, Shape::Shape2);
    assert_eq!((case.i.clone(), case.j.clone()), (p(&["xy"]), p(&["zw"])));
    let g = build_glued(&s, &fid("G"), &fid("F")).unwrap();
    let merged = &g.glued.faces()[&fid("G#F")];
    assert_eq!(merged.top, p(&["xy", "yw"]));
    assert_eq!(merged.bottom, p(&["xz", "zw"]));
}

#[test]
fn motivating_pair_is_shape_three() {
    let s = scheme("two_to_one");
    let Composable::CaseB(case) = classify_composable(&s, &fid("alpha1"), &fid("alpha2")).unwrap() else {
        panic!("expected case B");
    };
    assert_eq!(case.shape, Shape::Shape3);
    assert_eq!((case.i.clone(), case.j.clone()), (p(&["g1"]), p(&["p2"])));
    assert_eq!(paste_formula(&case, "α1", "α2"), "(α2∘g1)·(p2∘α1)");
}

#[test]
fn paste_label_rows() {
    let case = |shape| ShapeCase {
        shape,
        i: p(&["i"]),
        j: p(&["j"]),
        overlap: p(&["r"]),
    };
    assert_eq!(paste_formula(&case(Shape::Shape1), "aF", "aG"), "aG·(j∘aF∘i)");
    assert_eq!(paste_formula(&case(Shape::Shape2), "aF", "aG"), "(j∘aG)·(aF∘i)");
    assert_eq!(paste_formula(&case(Shape::Shape3), "aF", "aG"), "(aG∘i)·(j∘aF)");
    assert_eq!(paste_formula(&case(Shape::Shape4), "aF", "aG"), "(j∘aG∘i)·aF");
    let degenerate = ShapeCase {
        shape: Shape::Shape1,
        i: vec![],
        j: vec![],
        overlap: p(&["r"]),
    };
    assert_eq!(paste_formula(&degenerate, "aF", "aG"), "aG·aF");
}

#[test]
fn s_functor_on_objects() {
    let s = scheme("glue_row2");
    let g = build_glued(&s, &fid("F"), &fid("G")).unwrap();
    assert_eq!(s_functor_ob(&g, &order("H,F#G")).unwrap(), order("H,F,G"));
    assert!(s_functor_ob(&g, &order("F#G,H")).is_err());
    let ds = build_glued(&scheme("double_stack"), &fid("F"), &fid("G")).unwrap();
    assert_eq!(s_functor_ob(&ds, &order("F#G,H,K")).unwrap(), order("F,G,H,K"));
    let st = build_glued(&scheme("stacked_bigons"), &fid("F"), &fid("G")).unwrap();
    assert_eq!(s_functor_ob(&st, &order("F#G")).unwrap(), order("F,G"));
    assert!(s_functor_ob(&g, &order("H")).is_err());
}

#[test]
fn s_functor_on_moves() {
    let s = scheme("double_stack");
    let g = build_glued(&s, &fid("F"), &fid("G")).unwrap();
    let at = order("F#G,H,K");
    let m = GenMove { at: at.clone(), index: 0 };
    let image = s_functor_move(&g, &m).unwrap();
    assert_eq!(image.iter().map(|x| x.index).collect::<Vec<_>>(), vec![1, 0]);
    assert_eq!(image.last().unwrap().target(), order("H,F,G,K"));
    let m = GenMove { at: order("H,F#G,K"), index: 0 };
    let image = s_functor_move(&g, &m).unwrap();
    assert_eq!(image.iter().map(|x| x.index).collect::<Vec<_>>(), vec![0, 1]);
    assert_eq!(image.last().unwrap().target(), order("F,G,H,K"));
    // H ◁ K blocks this one
    let m = GenMove { at: order("F#G,H,K"), index: 1 };
    assert!(s_functor_move(&g, &m).is_err());
}

#[test]
fn pseudo_inverse_choices() {
    let s = scheme("double_stack");
    let g = build_glued(&s, &fid("F"), &fid("G")).unwrap();
    assert_eq!(pseudo_inverse(&g, &order("F,G,H,K"), JChoice::Canonical).unwrap(), order("F#G,H,K"));
    assert_eq!(pseudo_inverse(&g, &order("F,H,G,K"), JChoice::Canonical).unwrap(), order("F#G,H,K"));
    assert_eq!(pseudo_inverse(&g, &order("F,H,G,K"), JChoice::ShiftUpper).unwrap(), order("H,F#G,K"));
    for o in enumerate_orders(&s) {
        let j = pseudo_inverse(&g, &o, JChoice::FirstAdjacent).unwrap();
        assert_eq!(j, order("F#G,H,K"));
    }
    // orders already adjacent are fixed
    for o in enumerate_orders(&s) {
        if o.faces.windows(2).any(|w| w[0] == fid("F") && w[1] == fid("G")) {
            let j = pseudo_inverse(&g, &o, JChoice::Canonical).unwrap();
            assert_eq!(s_functor_ob(&g, &j).unwrap(), o);
        }
    }
}

#[test]
fn glued_labelling_expands_to_original() {
    for (name, f, gg) in [
        ("stacked_bigons", "F", "G"),
        ("glue_row2", "F", "G"),
        ("glue_row3", "G", "F"),
        ("two_to_one", "alpha1", "alpha2"),
        ("double_stack", "F", "G"),
    ] {
        let l = lab(name);
        let g = build_glued(&l.scheme, &fid(f), &fid(gg)).unwrap();
        let lfg = glued_labelling(&l, &g).unwrap();
        for o in enumerate_orders(&g.glued) {
            let lhs = eval_order(&lfg, &o).unwrap();
            let rhs = eval_order(&l, &s_functor_ob(&g, &o).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{name} at [{o}]");
        }
    }
}

#[test]
fn gen3_pair_lands_on_alternative_glued_labelling() {
    for (name, f, gg, cell) in [
        ("stacked_bigons", "F", "G", "Pi"),
        ("glue_row2", "F", "G", "Pi"),
        ("glue_row3", "G", "F", "Pi"),
        ("two_to_one", "alpha1", "alpha2", "Pi"),
        ("double_stack", "H", "K", "Omega"),
    ] {
        let l = lab(name);
        let g = build_glued(&l.scheme, &fid(f), &fid(gg)).unwrap();
        let alt = glued_labelling_alt(&l, &g, &CellName::from(cell)).unwrap();
        for o in enumerate_orders(&g.glued) {
            let orig = s_functor_ob(&g, &o).unwrap();
            let w = eval_order(&l, &orig).unwrap();
            let idx = l.cell_index(&orig, orig.position(&fid(f)).unwrap());
            let after = apply_move(&l.sig, &w, &Move::gen3_pair(idx, cell)).unwrap();
            assert_eq!(after, eval_order(&alt, &o).unwrap(), "{name} at [{o}]");
        }
    }
}

#[test]
fn relabelling_commutes_with_gluing() {
    let l = lab("glue_row2");
    let g = build_glued(&l.scheme, &fid("F"), &fid("G")).unwrap();
    let theta = CellName::from("Theta");
    let a = glued_labelling(&l, &g).unwrap().retarget(&theta).unwrap();
    let b = glued_labelling(&l.retarget(&theta).unwrap(), &g).unwrap();
    assert_eq!(a, b);
}

#[test]
fn relabelling_a_merged_face_fails() {
    let l = lab("stacked_bigons");
    let g = build_glued(&l.scheme, &fid("F"), &fid("G")).unwrap();
    let lfg = glued_labelling(&l, &g).unwrap();
    assert!(matches!(
        retarget_glued(&lfg, &CellName::from("Gamma")),
        Err(GlueError::LabelOnMergedFace { .. })
    ));
}

#[test]
fn induced_nat2_components() {
    let l = lab("double_stack");
    let g = build_glued(&l.scheme, &fid("F"), &fid("G")).unwrap();
    let pi = CellName::from("Pi");
    let w = induced_nat2(&l, &g, &pi, &order("F,G,H,K"), JChoice::Canonical).unwrap();
    assert_eq!(w.moves, vec![Move::gen3_pair(0, "Pi")]);
    let w = induced_nat2(&l, &g, &pi, &order("F,H,G,K"), JChoice::Canonical).unwrap();
    assert_eq!(w.moves.len(), 2);
    assert!(w.moves[0].is_swap());
    assert_eq!(w.moves[1], Move::gen3_pair(0, "Pi"));
    let st = lab("stacked_bigons");
    let gs = build_glued(&st.scheme, &fid("F"), &fid("G")).unwrap();
    let w = induced_nat2(&st, &gs, &pi, &order("F,G"), JChoice::Canonical).unwrap();
    assert_eq!(w.moves, vec![Move::gen3_pair(0, "Pi")]);
}

#[test]
fn gluing_disjoint_pairs_commutes() {
    let s = scheme("double_stack");
    let fg = build_glued(&s, &fid("F"), &fid("G")).unwrap();
    let fg_hk = build_glued(&fg.glued, &fid("H"), &fid("K")).unwrap();
    let hk = build_glued(&s, &fid("H"), &fid("K")).unwrap();
    let hk_fg = build_glued(&hk.glued, &fid("F"), &fid("G")).unwrap();
    assert_eq!(fg_hk.glued, hk_fg.glued);
    for o in enumerate_orders(&fg_hk.glued) {
        let a = s_functor_ob(&fg, &s_functor_ob(&fg_hk, &o).unwrap()).unwrap();
        let b = s_functor_ob(&hk, &s_functor_ob(&hk_fg, &o).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn nested_merge_ids() {
    let s = scheme("double_stack");
    let fg = build_glued(&s, &fid("F"), &fid("G")).unwrap();
    assert!(fg.glued.faces().contains_key(&fid("F#G")));
    // a three-face stack glued twice
    let raw = crate::scheme::RawScheme::from_json(
        r#"{"vertices":["S","T"],"edges":[{"id":"e0","src":"S","tgt":"T"},{"id":"e1","src":"S","tgt":"T"},
        {"id":"e2","src":"S","tgt":"T"},{"id":"e3","src":"S","tgt":"T"}],
        "faces":[{"id":"F","top":["e0"],"bottom":["e1"]},{"id":"G","top":["e1"],"bottom":["e2"]},{"id":"H","top":["e2"],"bottom":["e3"]}],
        "top":["e0"],"bottom":["e3"]}"#,
    )
    .unwrap();
    let s3 = PastingScheme::validate(&raw).unwrap();
    let once = build_glued(&s3, &fid("F"), &fid("G")).unwrap();
    let twice = build_glued(&once.glued, &fid("F#G"), &fid("H")).unwrap();
    assert_eq!(twice.merged, fid("F#G#H"));
    assert_eq!(twice.glued.faces().len(), 1);
}

#[test]
fn unknown_and_same_faces() {
    let s = scheme("stacked_bigons");
    assert!(matches!(classify_composable(&s, &fid("F"), &fid("Z")), Err(GlueError::UnknownFace(_))));
    assert!(matches!(classify_composable(&s, &fid("F"), &fid("F")), Err(GlueError::SameFace(_))));
}
