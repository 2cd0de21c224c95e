//! Finite quivers (directed multigraphs with loops and parallel edges).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::id::Id;
use crate::report::CheckReport;

/// Unchecked quiver description: a vertex list plus `(edge, source, target)`
/// triples. [`validate_quiver`] reports everything wrong with it, and
/// `Quiver::try_from` accepts it only when nothing is.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuiverData {
    pub vertices: Vec<Id>,
    pub edges: Vec<(Id, Id, Id)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuiverViolation {
    MalformedId { id: Id },
    DuplicateVertex { vertex: Id },
    DuplicateEdge { edge: Id },
    DanglingSource { edge: Id, source: Id },
    DanglingTarget { edge: Id, target: Id },
}

impl fmt::Display for QuiverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverViolation::MalformedId { id } => write!(f, "malformed id {id:?}"),
            QuiverViolation::DuplicateVertex { vertex } => write!(f, "duplicate vertex {vertex}"),
            QuiverViolation::DuplicateEdge { edge } => write!(f, "duplicate edge {edge}"),
            QuiverViolation::DanglingSource { edge, source } => {
                write!(f, "src({edge}) = {source} is not a vertex")
            }
            QuiverViolation::DanglingTarget { edge, target } => {
                write!(f, "tgt({edge}) = {target} is not a vertex")
            }
        }
    }
}

/// Lists every duplicate id and every edge whose endpoint is not a declared
/// vertex.
pub fn validate_quiver(data: &QuiverData) -> CheckReport<QuiverViolation> {
    let mut violations = Vec::new();
    let mut vertices = BTreeSet::new();
    for v in &data.vertices {
        if !v.is_well_formed() {
            violations.push(QuiverViolation::MalformedId { id: v.clone() });
        }
        if !vertices.insert(v) {
            violations.push(QuiverViolation::DuplicateVertex { vertex: v.clone() });
        }
    }
    let mut edges = BTreeSet::new();
    for (e, s, t) in &data.edges {
        if !e.is_well_formed() {
            violations.push(QuiverViolation::MalformedId { id: e.clone() });
        }
        if !edges.insert(e) {
            violations.push(QuiverViolation::DuplicateEdge { edge: e.clone() });
        }
        if !vertices.contains(s) {
            violations.push(QuiverViolation::DanglingSource { edge: e.clone(), source: s.clone() });
        }
        if !vertices.contains(t) {
            violations.push(QuiverViolation::DanglingTarget { edge: e.clone(), target: t.clone() });
        }
    }
    CheckReport::from_violations(violations)
}

#[derive(PartialEq, Eq, Hash)]
struct Inner {
    vertices: Vec<Id>,
    edges: Vec<Id>,
    src: Vec<usize>,
    tgt: Vec<usize>,
}

/// A valid finite quiver.
///
/// Vertices and edges are stored sorted by id; every index-based accessor
/// refers to positions in those sorted lists. Values are immutable and cheap
/// to clone. Equality is structural: same ids, same endpoints.
#[derive(Clone)]
pub struct Quiver {
    inner: Arc<Inner>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl Eq for Quiver {}

impl std::hash::Hash for Quiver {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.hash(state)
    }
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(edge, source, target)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Quiver>
    where
        V: IntoIterator<Item = Id>,
        E: IntoIterator<Item = (Id, Id, Id)>,
    {
        Quiver::try_from(QuiverData {
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
        })
    }

    pub fn empty() -> Quiver {
        Quiver::from_sorted_parts(Vec::new(), Vec::new(), Vec::new(), Vec::new())
    }

    /// Assembles a quiver from already sorted, duplicate-free id lists and
    /// in-range endpoint indices.
    pub(crate) fn from_sorted_parts(
        vertices: Vec<Id>,
        edges: Vec<Id>,
        src: Vec<usize>,
        tgt: Vec<usize>,
    ) -> Quiver {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(src.len() == edges.len() && tgt.len() == edges.len());
        debug_assert!(src.iter().chain(&tgt).all(|&v| v < vertices.len()));
        Quiver { inner: Arc::new(Inner { vertices, edges, src, tgt }) }
    }

    pub fn vertex_count(&self) -> usize {
        self.inner.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.inner.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Id] {
        &self.inner.vertices
    }

    pub fn edges(&self) -> &[Id] {
        &self.inner.edges
    }

    pub fn vertex(&self, index: usize) -> &Id {
        &self.inner.vertices[index]
    }

    pub fn edge(&self, index: usize) -> &Id {
        &self.inner.edges[index]
    }

    pub fn vertex_index(&self, id: &Id) -> Option<usize> {
        self.inner.vertices.binary_search(id).ok()
    }

    pub fn edge_index(&self, id: &Id) -> Option<usize> {
        self.inner.edges.binary_search(id).ok()
    }

    pub fn has_vertex(&self, id: &Id) -> bool {
        self.vertex_index(id).is_some()
    }

    pub fn has_edge(&self, id: &Id) -> bool {
        self.edge_index(id).is_some()
    }

    /// Source vertex index of the edge at `edge`.
    pub fn src(&self, edge: usize) -> usize {
        self.inner.src[edge]
    }

    pub fn tgt(&self, edge: usize) -> usize {
        self.inner.tgt[edge]
    }

    pub fn sources(&self) -> &[usize] {
        &self.inner.src
    }

    pub fn targets(&self) -> &[usize] {
        &self.inner.tgt
    }

    pub fn source_of(&self, edge: &Id) -> Option<&Id> {
        self.edge_index(edge).map(|e| self.vertex(self.src(e)))
    }

    pub fn target_of(&self, edge: &Id) -> Option<&Id> {
        self.edge_index(edge).map(|e| self.vertex(self.tgt(e)))
    }

    /// `(edge, source, target)` triples in edge order.
    pub fn triples(&self) -> impl Iterator<Item = (&Id, &Id, &Id)> + '_ {
        (0..self.edge_count())
            .map(move |e| (self.edge(e), self.vertex(self.src(e)), self.vertex(self.tgt(e))))
    }

    /// Indices of the edges from `v` to `w`, in id order.
    pub fn edges_between_indices(&self, v: usize, w: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edge_count()).filter(move |&e| self.src(e) == v && self.tgt(e) == w)
    }

    /// A vertex is independent when no edge starts or ends at it.
    pub fn is_independent_index(&self, v: usize) -> bool {
        !self.inner.src.contains(&v) && !self.inner.tgt.contains(&v)
    }

    pub fn to_data(&self) -> QuiverData {
        QuiverData {
            vertices: self.vertices().to_vec(),
            edges: self.triples().map(|(e, s, t)| (e.clone(), s.clone(), t.clone())).collect(),
        }
    }
}

impl TryFrom<QuiverData> for Quiver {
    type Error = Error;

    fn try_from(data: QuiverData) -> Result<Quiver> {
        let report = validate_quiver(&data);
        if let Some(v) = report.first() {
            return Err(Error::InvalidQuiver(v.to_string()));
        }
        let mut vertices = data.vertices;
        vertices.sort();
        let mut triples = data.edges;
        triples.sort();
        let index = |id: &Id| vertices.binary_search(id).expect("validated endpoint");
        let src = triples.iter().map(|(_, s, _)| index(s)).collect();
        let tgt = triples.iter().map(|(_, _, t)| index(t)).collect();
        let edges = triples.into_iter().map(|(e, _, _)| e).collect();
        Ok(Quiver::from_sorted_parts(vertices, edges, src, tgt))
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver {{ V: {:?}, E: [", self.vertices())?;
        for (i, (e, s, t)) in self.triples().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e:?}: {s:?}->{t:?}")?;
        }
        f.write_str("] }")
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
