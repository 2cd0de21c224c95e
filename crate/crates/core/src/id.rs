//! Element names for vertices and edges.
//!
//! An [`Id`] is either a plain text label, a small natural number, or a tuple
//! of other ids. Constructed quivers name their elements with tuples: the
//! pair `(s, t)` is an edge of a full quiver, and a tuple whose head is a
//! natural such as `(0, e)` or `(1, v, w)` is a *tagged* id.
//!
//! The derived ordering is structural and total: naturals sort before labels,
//! labels before tuples, and tuples compare lexicographically. Every "pick
//! one" step in the crate takes the minimum under this ordering.

use std::fmt;
use std::sync::Arc;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Id {
    Nat(u32),
    Name(Arc<str>),
    Tuple(Arc<[Id]>),
}

impl Id {
    pub fn name(label: impl AsRef<str>) -> Self {
        Id::Name(Arc::from(label.as_ref()))
    }

    pub fn nat(n: u32) -> Self {
        Id::Nat(n)
    }

    /// The tagged id `(tag, payload...)`.
    pub fn tagged(tag: u32, payload: impl IntoIterator<Item = Id>) -> Self {
        let items: Vec<Id> = std::iter::once(Id::Nat(tag)).chain(payload).collect();
        Id::Tuple(items.into())
    }

    pub fn tuple(items: impl IntoIterator<Item = Id>) -> Self {
        Id::Tuple(items.into_iter().collect::<Vec<_>>().into())
    }

    pub fn pair(a: Id, b: Id) -> Self {
        Id::Tuple(Arc::from([a, b]))
    }

    /// Tag and payload when this id is a tuple headed by a natural.
    pub fn as_tagged(&self) -> Option<(u32, &[Id])> {
        match self {
            Id::Tuple(items) => match items.first() {
                Some(Id::Nat(tag)) => Some((*tag, &items[1..])),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[Id]> {
        match self {
            Id::Tuple(items) => Some(items),
            _ => None,
        }
    }

    pub fn as_name(&self) -> Option<&str> {
        match self {
            Id::Name(s) => Some(s),
            _ => None,
        }
    }

    /// Labels must be nonempty and free of control characters; tuples must
    /// be nonempty and well formed all the way down.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Id::Nat(_) => true,
            Id::Name(s) => !s.is_empty() && !s.chars().any(char::is_control),
            Id::Tuple(items) => !items.is_empty() && items.iter().all(Id::is_well_formed),
        }
    }
}

impl From<&str> for Id {
    fn from(s: &str) -> Self {
        Id::name(s)
    }
}

impl From<String> for Id {
    fn from(s: String) -> Self {
        Id::Name(Arc::from(s))
    }
}

impl From<u32> for Id {
    fn from(n: u32) -> Self {
        Id::Nat(n)
    }
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Id::Nat(n) => write!(f, "{n}"),
            Id::Name(s) => f.write_str(s),
            Id::Tuple(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Id::Name(s) => write!(f, "{s:?}"),
            _ => fmt::Display::fmt(self, f),
        }
    }
}

// Labels serialize as strings, naturals as numbers and tuples as arrays, so a
// tagged id is the nested array `[tag, ...payload]`.
impl Serialize for Id {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Id::Nat(n) => serializer.serialize_u32(*n),
            Id::Name(s) => serializer.serialize_str(s),
            Id::Tuple(items) => {
                let mut seq = serializer.serialize_seq(Some(items.len()))?;
                for item in items.iter() {
                    seq.serialize_element(item)?;
                }
                seq.end()
            }
        }
    }
}

struct IdVisitor;

impl<'de> Visitor<'de> for IdVisitor {
    type Value = Id;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a nonempty string, a natural number, or a nonempty array of ids")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Id, E> {
        u32::try_from(v)
            .map(Id::Nat)
            .map_err(|_| E::custom(format!("id number {v} out of range")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Id, E> {
        u64::try_from(v)
            .map_err(|_| E::custom(format!("id number {v} is negative")))
            .and_then(|v| self.visit_u64(v))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Id, E> {
        let id = Id::name(v);
        if id.is_well_formed() {
            Ok(id)
        } else {
            Err(E::custom(format!("invalid id label {v:?}")))
        }
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Id, A::Error> {
        let mut items = Vec::new();
        while let Some(item) = seq.next_element::<Id>()? {
            items.push(item);
        }
        if items.is_empty() {
            return Err(de::Error::custom("empty tuple id"));
        }
        Ok(Id::tuple(items))
    }
}

impl<'de> Deserialize<'de> for Id {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Id, D::Error> {
        deserializer.deserialize_any(IdVisitor)
    }
}
