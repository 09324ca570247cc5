//! Two-dimensional pasting schemes, their composition orders, and a 3-cell
//! word engine for the free Gray-category generated by a labelled scheme.
//!
//! The crate is organised bottom-up:
//!
//! * [`scheme`] validates plane DAGs with face boundary data.
//! * [`orders`] computes the face relations and the groupoid of composition
//!   orders (objects and generating transpositions).
//! * [`terms`] evaluates labellings into vertical words of whiskered
//!   generators and decides equality of 3-cell move words by bounded search.
//! * [`glue`] classifies composable face pairs, builds glued schemes and the
//!   functors between their order groupoids.
//! * [`verify`] instantiates the generalised interchange results on fixtures
//!   and a seeded random corpus.

pub mod glue;
pub mod ids;
pub mod orders;
pub mod scheme;
pub mod terms;
#[cfg(test)]
pub(crate) mod testutil;
pub mod verify;

pub use ids::{CellName, EdgeId, FaceId, GenName, Path, VertexId};
pub use orders::{CompOrder, FaceRelations, GenMove};
pub use scheme::{PastingScheme, RawScheme, SchemeError};
pub use terms::{Labelling, Move, MoveWord, Sign, Verdict, VertWord, WhiskCell};
