use std::collections::{BTreeMap, BTreeSet};
use std::path::Path as FsPath;

use serde::Deserialize;
use thiserror::Error;

use super::{GenSig, WhiskCell};
use crate::glue::{merge_geometry, GlueError, Shape};
use crate::ids::{CellName, EdgeId, FaceId, GenName, Path};
use crate::orders::CompOrder;
use crate::scheme::{PastingScheme, RawScheme, SchemeLoadError};

/// Whiskers of the two cells of a pasted pair, relative to the merged
/// region: the upper cell is `d ∘ α_F ∘ c`, the lower one `b ∘ α_G ∘ a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairFragment {
    pub upper_pre: Path,
    pub upper_post: Path,
    pub lower_pre: Path,
    pub lower_post: Path,
}

impl PairFragment {
    /// Outer whiskers `(pre, post)` of the merged cell, if `upper` then
    /// `lower` are exactly the pasted pair whiskered by them.
    pub fn merge(&self, upper: &WhiskCell, lower: &WhiskCell) -> Option<(Path, Path)> {
        let pre = upper.pre.strip_suffix(self.upper_pre.as_slice())?;
        let post = upper.post.strip_prefix(self.upper_post.as_slice())?;
        let lower_pre = [pre, &self.lower_pre].concat();
        let lower_post = [&self.lower_post, post].concat();
        (lower.pre == lower_pre && lower.post == lower_post).then(|| (pre.to_vec(), post.to_vec()))
    }
}

/// A face label after gluing: the pasted composite of two labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pasted {
    pub shape: Shape,
    pub fragment: PairFragment,
    pub upper: FaceLabel,
    pub lower: FaceLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FaceLabel {
    Gen(GenName),
    Pasted(Box<Pasted>),
}

impl FaceLabel {
    /// Appends the cells this label contributes when whiskered by `pre`, `post`.
    pub fn expand(&self, pre: &[EdgeId], post: &[EdgeId], out: &mut Vec<WhiskCell>) {
        match self {
            FaceLabel::Gen(g) => out.push(WhiskCell {
                pre: pre.to_vec(),
                gen: g.clone(),
                post: post.to_vec(),
            }),
            FaceLabel::Pasted(p) => {
                let fr = &p.fragment;
                p.upper.expand(&[pre, &fr.upper_pre].concat(), &[&fr.upper_post, post].concat(), out);
                p.lower.expand(&[pre, &fr.lower_pre].concat(), &[&fr.lower_post, post].concat(), out);
            }
        }
    }

    pub fn cell_count(&self) -> usize {
        match self {
            FaceLabel::Gen(_) => 1,
            FaceLabel::Pasted(p) => p.upper.cell_count() + p.lower.cell_count(),
        }
    }

    pub fn as_gen(&self) -> Option<&GenName> {
        match self {
            FaceLabel::Gen(g) => Some(g),
            FaceLabel::Pasted(_) => None,
        }
    }

    /// `α_G·α_F`-style rendering, generators in composition order.
    pub fn render(&self) -> String {
        match self {
            FaceLabel::Gen(g) => g.to_string(),
            FaceLabel::Pasted(p) => format!("({}·{})", p.lower.render(), p.upper.render()),
        }
    }
}

/// A declared 3-cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Decl3 {
    OneToOne {
        name: CellName,
        face: FaceId,
        source: GenName,
        target: GenName,
    },
    /// `α_G·α_F ⇛ α′` for `F ⋖ G`.
    TwoToOne {
        name: CellName,
        faces: (FaceId, FaceId),
        source_f: GenName,
        source_g: GenName,
        target: GenName,
        shape: Shape,
        fragment: PairFragment,
    },
}

impl Decl3 {
    pub fn name(&self) -> &CellName {
        match self {
            Decl3::OneToOne { name, .. } | Decl3::TwoToOne { name, .. } => name,
        }
    }

    pub fn target(&self) -> &GenName {
        match self {
            Decl3::OneToOne { target, .. } | Decl3::TwoToOne { target, .. } => target,
        }
    }
}

/// Generators of the free Gray-category: 2-cells with their boundaries and
/// the declared 3-cells.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    pub gens: BTreeMap<GenName, GenSig>,
    pub cells: BTreeMap<CellName, Decl3>,
}

impl Signature {
    pub fn gen(&self, g: &GenName) -> &GenSig {
        self.gens
            .get(g)
            .unwrap_or_else(|| panic!("generator `{g}` missing from the signature"))
    }

    pub fn cell(&self, c: &CellName) -> Option<&Decl3> {
        self.cells.get(c)
    }
}

/// Declaration of a 3-cell as written in a labelling file.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum ThreeCellSpec {
    #[serde(rename = "1to1")]
    OneToOne {
        name: CellName,
        face: FaceId,
        target: GenName,
    },
    #[serde(rename = "2to1")]
    TwoToOne {
        name: CellName,
        faces: [FaceId; 2],
        target: GenName,
        #[serde(default)]
        top: Option<Path>,
        #[serde(default)]
        bottom: Option<Path>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabFile {
    scheme: serde_json::Value,
    #[serde(default)]
    labels: BTreeMap<FaceId, GenName>,
    #[serde(default)]
    threecells: Vec<ThreeCellSpec>,
}

#[derive(Debug, Error)]
pub enum LabelError {
    #[error("malformed labelling document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("cannot read `{path}`: {err}")]
    Io { path: String, err: std::io::Error },
    #[error("{0}")]
    Scheme(#[from] SchemeLoadError),
    #[error("UnknownFace: `{0}`")]
    UnknownFace(FaceId),
    #[error("DuplicateGenerator: generator name `{0}` is used more than once")]
    DuplicateGenerator(GenName),
    #[error("DuplicateCell: 3-cell name `{0}` is declared more than once")]
    DuplicateCell(CellName),
    #[error("LabelOnMergedFace: 3-cell `{cell}` targets face `{face}`, which carries a pasted label")]
    LabelOnMergedFace { cell: CellName, face: FaceId },
    #[error("BoundaryMismatch: 3-cell `{cell}` declares {which} {declared:?} but the merged face has {actual:?}")]
    BoundaryMismatch {
        cell: CellName,
        which: &'static str,
        declared: Path,
        actual: Path,
    },
    #[error("NotOneToOne: `{0}` is not a declared one-to-one 3-cell")]
    NotOneToOne(CellName),
    #[error("3-cell `{cell}`: {err}")]
    Glue { cell: CellName, err: GlueError },
}

/// A labelling of a scheme in the free Gray-category on its faces, together
/// with declared 3-cells. Edges label themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    pub scheme: PastingScheme,
    pub labels: BTreeMap<FaceId, FaceLabel>,
    pub sig: Signature,
}

impl Labelling {
    /// Builds a labelling whose generators are named by `names` (face ids by
    /// default), adding the declared 3-cells.
    pub fn new(
        scheme: PastingScheme,
        names: &BTreeMap<FaceId, GenName>,
        specs: &[ThreeCellSpec],
    ) -> Result<Self, LabelError> {
        if let Some(f) = names.keys().find(|f| !scheme.faces().contains_key(*f)) {
            return Err(LabelError::UnknownFace(f.clone()));
        }
        let mut lab = Labelling {
            labels: BTreeMap::new(),
            sig: Signature::default(),
            scheme,
        };
        for face in lab.scheme.faces().values() {
            let g = names
                .get(&face.id)
                .cloned()
                .unwrap_or_else(|| GenName::new(face.id.as_str()));
            let sig = GenSig {
                dom: face.top.clone(),
                cod: face.bottom.clone(),
            };
            if lab.sig.gens.insert(g.clone(), sig).is_some() {
                return Err(LabelError::DuplicateGenerator(g));
            }
            lab.labels.insert(face.id.clone(), FaceLabel::Gen(g));
        }
        for spec in specs {
            lab.declare(spec)?;
        }
        Ok(lab)
    }

    /// Parses a labelling document; a `scheme` given as a string is a path
    /// relative to `base`.
    pub fn from_json(text: &str, base: Option<&FsPath>) -> Result<Self, LabelError> {
        let file: LabFile = serde_json::from_str(text)?;
        let raw: RawScheme = match &file.scheme {
            serde_json::Value::String(rel) => {
                let path = match base {
                    Some(b) => b.join(rel),
                    None => rel.into(),
                };
                let text = std::fs::read_to_string(&path).map_err(|err| LabelError::Io {
                    path: path.display().to_string(),
                    err,
                })?;
                RawScheme::from_json(&text)?
            }
            other => serde_json::from_value(other.clone())?,
        };
        let scheme = PastingScheme::validate(&raw).map_err(SchemeLoadError::Invalid)?;
        Labelling::new(scheme, &file.labels, &file.threecells)
    }

    pub fn from_file(path: &FsPath) -> Result<Self, LabelError> {
        let text = std::fs::read_to_string(path).map_err(|err| LabelError::Io {
            path: path.display().to_string(),
            err,
        })?;
        Labelling::from_json(&text, path.parent())
    }

    fn fresh(&self, g: &GenName) -> Result<(), LabelError> {
        if self.sig.gens.contains_key(g) {
            Err(LabelError::DuplicateGenerator(g.clone()))
        } else {
            Ok(())
        }
    }

    fn gen_label(&self, cell: &CellName, f: &FaceId) -> Result<GenName, LabelError> {
        match self.labels.get(f) {
            None => Err(LabelError::UnknownFace(f.clone())),
            Some(FaceLabel::Gen(g)) => Ok(g.clone()),
            Some(FaceLabel::Pasted(_)) => Err(LabelError::LabelOnMergedFace {
                cell: cell.clone(),
                face: f.clone(),
            }),
        }
    }

    /// Adds a 3-cell and its target generator.
    pub fn declare(&mut self, spec: &ThreeCellSpec) -> Result<(), LabelError> {
        let decl = match spec {
            ThreeCellSpec::OneToOne { name, face, target } => {
                let source = self.gen_label(name, face)?;
                self.fresh(target)?;
                let sig = self.sig.gen(&source).clone();
                self.sig.gens.insert(target.clone(), sig);
                Decl3::OneToOne {
                    name: name.clone(),
                    face: face.clone(),
                    source,
                    target: target.clone(),
                }
            }
            ThreeCellSpec::TwoToOne {
                name,
                faces: [f, g],
                target,
                top,
                bottom,
            } => {
                let source_f = self.gen_label(name, f)?;
                let source_g = self.gen_label(name, g)?;
                let m = merge_geometry(&self.scheme, f, g).map_err(|err| LabelError::Glue {
                    cell: name.clone(),
                    err,
                })?;
                for (which, declared, actual) in [("top", top, &m.top), ("bottom", bottom, &m.bottom)] {
                    if let Some(d) = declared {
                        if d != actual {
                            return Err(LabelError::BoundaryMismatch {
                                cell: name.clone(),
                                which,
                                declared: d.clone(),
                                actual: actual.clone(),
                            });
                        }
                    }
                }
                self.fresh(target)?;
                self.sig.gens.insert(
                    target.clone(),
                    GenSig {
                        dom: m.top.clone(),
                        cod: m.bottom.clone(),
                    },
                );
                Decl3::TwoToOne {
                    name: name.clone(),
                    faces: (f.clone(), g.clone()),
                    source_f,
                    source_g,
                    target: target.clone(),
                    shape: m.shape,
                    fragment: m.fragment(),
                }
            }
        };
        if self.sig.cells.contains_key(decl.name()) {
            return Err(LabelError::DuplicateCell(decl.name().clone()));
        }
        self.sig.cells.insert(decl.name().clone(), decl);
        Ok(())
    }

    pub fn label(&self, f: &FaceId) -> &FaceLabel {
        self.labels
            .get(f)
            .unwrap_or_else(|| panic!("face `{f}` has no label"))
    }

    /// Index in the evaluated word of the first cell of the face at `pos`.
    pub fn cell_index(&self, o: &CompOrder, pos: usize) -> usize {
        o.faces[..pos].iter().map(|f| self.label(f).cell_count()).sum()
    }

    /// One-to-one 3-cell declarations in name order.
    pub fn one_to_one(&self) -> Vec<&CellName> {
        self.sig
            .cells
            .values()
            .filter(|d| matches!(d, Decl3::OneToOne { .. }))
            .map(Decl3::name)
            .collect()
    }

    pub fn two_to_one(&self) -> Vec<&CellName> {
        self.sig
            .cells
            .values()
            .filter(|d| matches!(d, Decl3::TwoToOne { .. }))
            .map(Decl3::name)
            .collect()
    }

    /// `L^{α′}`: the face carrying a one-to-one cell's source relabelled by
    /// its target.
    pub fn retarget(&self, cell: &CellName) -> Result<Labelling, LabelError> {
        let Some(Decl3::OneToOne { face, target, .. }) = self.sig.cells.get(cell) else {
            return Err(LabelError::NotOneToOne(cell.clone()));
        };
        if !self.labels.contains_key(face) {
            return Err(LabelError::LabelOnMergedFace {
                cell: cell.clone(),
                face: face.clone(),
            });
        }
        let mut out = self.clone();
        out.labels.insert(face.clone(), FaceLabel::Gen(target.clone()));
        Ok(out)
    }

    /// Every generator name occurring in face labels.
    pub fn used_generators(&self) -> BTreeSet<GenName> {
        fn walk(l: &FaceLabel, out: &mut BTreeSet<GenName>) {
            match l {
                FaceLabel::Gen(g) => {
                    out.insert(g.clone());
                }
                FaceLabel::Pasted(p) => {
                    walk(&p.upper, out);
                    walk(&p.lower, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        for l in self.labels.values() {
            walk(l, &mut out);
        }
        out
    }
}
