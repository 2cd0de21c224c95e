//! Quiver homomorphisms: a vertex map and an edge map commuting with source
//! and target.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::id::Id;
use crate::quiver::Quiver;
use crate::report::CheckReport;

/// Unchecked morphism description keyed by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismData {
    pub dom: Quiver,
    pub cod: Quiver,
    pub vertex_map: BTreeMap<Id, Id>,
    pub edge_map: BTreeMap<Id, Id>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Square {
    Source,
    Target,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MorphismViolation {
    MissingVertex { vertex: Id },
    MissingEdge { edge: Id },
    ExtraVertex { vertex: Id },
    ExtraEdge { edge: Id },
    VertexImageNotInCodomain { vertex: Id, image: Id },
    EdgeImageNotInCodomain { edge: Id, image: Id },
    /// The named square fails at `edge`.
    SquareFails { edge: Id, square: Square },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismViolation::MissingVertex { vertex } => write!(f, "no image for vertex {vertex}"),
            MorphismViolation::MissingEdge { edge } => write!(f, "no image for edge {edge}"),
            MorphismViolation::ExtraVertex { vertex } => {
                write!(f, "{vertex} is mapped but is not a vertex of the domain")
            }
            MorphismViolation::ExtraEdge { edge } => {
                write!(f, "{edge} is mapped but is not an edge of the domain")
            }
            MorphismViolation::VertexImageNotInCodomain { vertex, image } => {
                write!(f, "image {image} of vertex {vertex} is not in the codomain")
            }
            MorphismViolation::EdgeImageNotInCodomain { edge, image } => {
                write!(f, "image {image} of edge {edge} is not in the codomain")
            }
            MorphismViolation::SquareFails { edge, square: Square::Source } => {
                write!(f, "fV(src {edge}) != src(fE {edge})")
            }
            MorphismViolation::SquareFails { edge, square: Square::Target } => {
                write!(f, "fV(tgt {edge}) != tgt(fE {edge})")
            }
        }
    }
}

/// Checks totality and membership of both maps, then both commuting squares
/// edge by edge. Stops at the first violation.
pub fn validate_morphism(data: &MorphismData) -> CheckReport<MorphismViolation> {
    match resolve(data) {
        Ok(_) => CheckReport::ok(),
        Err(v) => CheckReport::failed(v),
    }
}

fn resolve(data: &MorphismData) -> std::result::Result<(Vec<usize>, Vec<usize>), MorphismViolation> {
    let (dom, cod) = (&data.dom, &data.cod);
    for v in data.vertex_map.keys() {
        if !dom.has_vertex(v) {
            return Err(MorphismViolation::ExtraVertex { vertex: v.clone() });
        }
    }
    for e in data.edge_map.keys() {
        if !dom.has_edge(e) {
            return Err(MorphismViolation::ExtraEdge { edge: e.clone() });
        }
    }
    let mut vmap = Vec::with_capacity(dom.vertex_count());
    for v in dom.vertices() {
        let image = data
            .vertex_map
            .get(v)
            .ok_or_else(|| MorphismViolation::MissingVertex { vertex: v.clone() })?;
        let index = cod.vertex_index(image).ok_or_else(|| {
            MorphismViolation::VertexImageNotInCodomain { vertex: v.clone(), image: image.clone() }
        })?;
        vmap.push(index);
    }
    let mut emap = Vec::with_capacity(dom.edge_count());
    for e in dom.edges() {
        let image = data
            .edge_map
            .get(e)
            .ok_or_else(|| MorphismViolation::MissingEdge { edge: e.clone() })?;
        let index = cod.edge_index(image).ok_or_else(|| {
            MorphismViolation::EdgeImageNotInCodomain { edge: e.clone(), image: image.clone() }
        })?;
        emap.push(index);
    }
    if let Some(v) = first_square_failure(dom, cod, &vmap, &emap) {
        return Err(v);
    }
    Ok((vmap, emap))
}

fn first_square_failure(
    dom: &Quiver,
    cod: &Quiver,
    vmap: &[usize],
    emap: &[usize],
) -> Option<MorphismViolation> {
    for e in 0..dom.edge_count() {
        let square = if vmap[dom.src(e)] != cod.src(emap[e]) {
            Square::Source
        } else if vmap[dom.tgt(e)] != cod.tgt(emap[e]) {
            Square::Target
        } else {
            continue;
        };
        return Some(MorphismViolation::SquareFails { edge: dom.edge(e).clone(), square });
    }
    None
}

/// A valid quiver homomorphism. Both maps are stored as index vectors into
/// the sorted vertex and edge lists of the codomain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuiverMorphism {
    dom: Quiver,
    cod: Quiver,
    vmap: Vec<usize>,
    emap: Vec<usize>,
}

impl QuiverMorphism {
    /// Builds a morphism from index maps, checking bounds and both squares.
    pub fn from_indices(
        dom: Quiver,
        cod: Quiver,
        vmap: Vec<usize>,
        emap: Vec<usize>,
    ) -> Result<QuiverMorphism> {
        if vmap.len() != dom.vertex_count() || emap.len() != dom.edge_count() {
            return Err(Error::InvalidMorphism("map length differs from domain size".into()));
        }
        if vmap.iter().any(|&w| w >= cod.vertex_count()) || emap.iter().any(|&f| f >= cod.edge_count())
        {
            return Err(Error::InvalidMorphism("image index out of range".into()));
        }
        if let Some(v) = first_square_failure(&dom, &cod, &vmap, &emap) {
            return Err(Error::InvalidMorphism(v.to_string()));
        }
        Ok(QuiverMorphism { dom, cod, vmap, emap })
    }

    pub(crate) fn from_indices_unchecked(
        dom: Quiver,
        cod: Quiver,
        vmap: Vec<usize>,
        emap: Vec<usize>,
    ) -> QuiverMorphism {
        debug_assert!(first_square_failure(&dom, &cod, &vmap, &emap).is_none());
        QuiverMorphism { dom, cod, vmap, emap }
    }

    /// Builds a morphism from id-level functions on vertices and edges.
    pub fn from_fns(
        dom: Quiver,
        cod: Quiver,
        mut vertex: impl FnMut(&Id) -> Id,
        mut edge: impl FnMut(&Id) -> Id,
    ) -> Result<QuiverMorphism> {
        let vertex_map = dom.vertices().iter().map(|v| (v.clone(), vertex(v))).collect();
        let edge_map = dom.edges().iter().map(|e| (e.clone(), edge(e))).collect();
        QuiverMorphism::try_from(MorphismData { dom, cod, vertex_map, edge_map })
    }

    pub fn identity(q: &Quiver) -> QuiverMorphism {
        QuiverMorphism {
            dom: q.clone(),
            cod: q.clone(),
            vmap: (0..q.vertex_count()).collect(),
            emap: (0..q.edge_count()).collect(),
        }
    }

    pub fn dom(&self) -> &Quiver {
        &self.dom
    }

    pub fn cod(&self) -> &Quiver {
        &self.cod
    }

    /// Vertex map as codomain indices, one per domain vertex.
    pub fn vertex_map(&self) -> &[usize] {
        &self.vmap
    }

    pub fn edge_map(&self) -> &[usize] {
        &self.emap
    }

    pub fn vertex_image(&self, v: &Id) -> Option<&Id> {
        self.dom.vertex_index(v).map(|i| self.cod.vertex(self.vmap[i]))
    }

    pub fn edge_image(&self, e: &Id) -> Option<&Id> {
        self.dom.edge_index(e).map(|i| self.cod.edge(self.emap[i]))
    }

    pub fn to_data(&self) -> MorphismData {
        MorphismData {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            vertex_map: self
                .dom
                .vertices()
                .iter()
                .zip(&self.vmap)
                .map(|(v, &w)| (v.clone(), self.cod.vertex(w).clone()))
                .collect(),
            edge_map: self
                .dom
                .edges()
                .iter()
                .zip(&self.emap)
                .map(|(e, &f)| (e.clone(), self.cod.edge(f).clone()))
                .collect(),
        }
    }

    pub fn is_mono(&self) -> bool {
        injective(&self.vmap, self.cod.vertex_count()) && injective(&self.emap, self.cod.edge_count())
    }

    pub fn is_epi(&self) -> bool {
        surjective(&self.vmap, self.cod.vertex_count()) && surjective(&self.emap, self.cod.edge_count())
    }

    pub fn is_iso(&self) -> bool {
        self.vmap.len() == self.cod.vertex_count()
            && self.emap.len() == self.cod.edge_count()
            && self.is_mono()
    }

    pub fn invert(&self) -> Result<QuiverMorphism> {
        if !self.is_iso() {
            return Err(Error::NotIso);
        }
        let mut vinv = vec![0; self.cod.vertex_count()];
        for (v, &w) in self.vmap.iter().enumerate() {
            vinv[w] = v;
        }
        let mut einv = vec![0; self.cod.edge_count()];
        for (e, &f) in self.emap.iter().enumerate() {
            einv[f] = e;
        }
        Ok(QuiverMorphism::from_indices_unchecked(self.cod.clone(), self.dom.clone(), vinv, einv))
    }
}

fn injective(map: &[usize], codomain: usize) -> bool {
    let mut seen = vec![false; codomain];
    map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
}

fn surjective(map: &[usize], codomain: usize) -> bool {
    let mut seen = vec![false; codomain];
    for &x in map {
        seen[x] = true;
    }
    seen.into_iter().all(|b| b)
}

impl TryFrom<MorphismData> for QuiverMorphism {
    type Error = Error;

    fn try_from(data: MorphismData) -> Result<QuiverMorphism> {
        let (vmap, emap) = resolve(&data).map_err(|v| Error::InvalidMorphism(v.to_string()))?;
        Ok(QuiverMorphism { dom: data.dom, cod: data.cod, vmap, emap })
    }
}

impl fmt::Debug for QuiverMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("QuiverMorphism { V: {")?;
        for (i, (v, &w)) in self.dom.vertices().iter().zip(&self.vmap).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v:?}->{:?}", self.cod.vertex(w))?;
        }
        f.write_str("}, E: {")?;
        for (i, (e, &g)) in self.dom.edges().iter().zip(&self.emap).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e:?}->{:?}", self.cod.edge(g))?;
        }
        f.write_str("} }")
    }
}

/// The composite `g ∘ f` (apply `f` first).
pub fn compose(g: &QuiverMorphism, f: &QuiverMorphism) -> Result<QuiverMorphism> {
    if f.cod != g.dom {
        return Err(Error::NotComposable);
    }
    Ok(QuiverMorphism {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        vmap: f.vmap.iter().map(|&v| g.vmap[v]).collect(),
        emap: f.emap.iter().map(|&e| g.emap[e]).collect(),
    })
}

pub fn identity(q: &Quiver) -> QuiverMorphism {
    QuiverMorphism::identity(q)
}

pub fn is_mono(m: &QuiverMorphism) -> bool {
    m.is_mono()
}

pub fn is_epi(m: &QuiverMorphism) -> bool {
    m.is_epi()
}

pub fn is_iso(m: &QuiverMorphism) -> bool {
    m.is_iso()
}

pub fn invert(m: &QuiverMorphism) -> Result<QuiverMorphism> {
    m.invert()
}
