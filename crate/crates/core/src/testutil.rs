use std::path::PathBuf;

use crate::scheme::{PastingScheme, RawScheme};
use crate::terms::Labelling;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn scheme(name: &str) -> PastingScheme {
    let text = std::fs::read_to_string(fixtures_dir().join(format!("{name}.scheme.json"))).unwrap();
    PastingScheme::validate(&RawScheme::from_json(&text).unwrap()).unwrap()
}

pub fn lab(name: &str) -> Labelling {
    Labelling::from_file(&fixtures_dir().join(format!("{name}.lab.json"))).unwrap()
}
