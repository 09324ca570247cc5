use std::borrow::Borrow;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

macro_rules! ident {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(s: impl AsRef<str>) -> Self {
                $name(Arc::from(s.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", &*self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name::new(s)
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                $name(Arc::from(s))
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(&self.0)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                String::deserialize(d).map($name::from)
            }
        }
    };
}

ident!(
    /// Opaque vertex identifier (0-cell label).
    VertexId
);
ident!(
    /// Opaque edge identifier; doubles as the 1-cell label of the edge.
    EdgeId
);
ident!(
    /// Opaque face identifier.
    FaceId
);
ident!(
    /// Name of a 2-generator in the free Gray-category.
    GenName
);
ident!(
    /// Name of a declared 3-cell.
    CellName
);

/// A directed path, listed in traversal order from its source vertex.
pub type Path = Vec<EdgeId>;

/// Separator used for the ids of merged faces (`F#G`).
pub const MERGE_SEPARATOR: char = '#';

/// Renders a path in composition order (`h·b·g` for the traversal `g, b, h`),
/// with `1` for the empty path.
pub fn compose_notation(path: &[EdgeId]) -> String {
    if path.is_empty() {
        return "1".to_string();
    }
    path.iter()
        .rev()
        .map(EdgeId::as_str)
        .collect::<Vec<_>>()
        .join("·")
}

/// Comma-separated rendering in traversal order.
pub fn join_ids<T: fmt::Display>(ids: &[T]) -> String {
    ids.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
