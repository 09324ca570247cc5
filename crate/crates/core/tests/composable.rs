//! The composability trichotomy against adjacency in the order groupoid.

use std::path::PathBuf;

use pasting_core::glue::{adjacent_order_exists, classify_composable, Composable, Shape};
use pasting_core::orders::enumerate_orders;
use pasting_core::scheme::PastingScheme;
use pasting_core::verify::SchemeGrammar;
use pasting_core::FaceId;
use proptest::prelude::*;

fn fixture(name: &str) -> PastingScheme {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.scheme.json"));
    PastingScheme::from_json(&std::fs::read_to_string(p).unwrap()).unwrap()
}

/// Some order has `f` immediately followed by `g`.
fn adjacent_oracle(s: &PastingScheme, f: &FaceId, g: &FaceId) -> bool {
    enumerate_orders(s)
        .iter()
        .any(|o| o.faces.windows(2).any(|w| w[0] == *f && w[1] == *g))
}

fn check_pairs(s: &PastingScheme) -> Result<(), TestCaseError> {
    let ids = s.face_ids();
    for f in &ids {
        for g in &ids {
            if f == g {
                continue;
            }
            let c = classify_composable(s, f, g).unwrap();
            let adj = adjacent_oracle(s, f, g);
            prop_assert_eq!(adj, adjacent_order_exists(s, f, g).unwrap());
            prop_assert_eq!(c != Composable::NotComposable, adj, "{} {} {:?}", f, g, c);
            if let Composable::CaseB(case) = c {
                let tau = &s.faces()[f].bottom;
                let sigma = &s.faces()[g].top;
                // the overlap is one segment of both boundaries
                prop_assert!(!case.overlap.is_empty());
                prop_assert!(tau.windows(case.overlap.len()).any(|w| w == case.overlap.as_slice()));
                prop_assert!(sigma.windows(case.overlap.len()).any(|w| w == case.overlap.as_slice()));
                let shared = sigma.iter().filter(|e| tau.contains(e)).count();
                prop_assert_eq!(shared, case.overlap.len());
                // the tag agrees with which ends of the faces lie on it
                let starts_f = tau.starts_with(&case.overlap);
                let ends_f = tau.ends_with(&case.overlap);
                let starts_g = sigma.starts_with(&case.overlap);
                let ends_g = sigma.ends_with(&case.overlap);
                let ok = match case.shape {
                    Shape::Shape1 => starts_f && ends_f,
                    Shape::Shape2 => starts_f && ends_g && !ends_f,
                    Shape::Shape3 => starts_g && ends_f && !starts_f,
                    Shape::Shape4 => starts_g && ends_g && !starts_f && !ends_f,
                };
                prop_assert!(ok, "{:?}", case);
            }
        }
    }
    Ok(())
}

#[test]
fn fixtures() {
    for name in ["stacked_bigons", "running", "series", "glue_row2", "glue_row3", "two_to_one", "double_stack"] {
        check_pairs(&fixture(name)).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn corpus_pairs(seed in any::<u64>()) {
        check_pairs(&SchemeGrammar::new(seed, 6).generate())?;
    }
}
