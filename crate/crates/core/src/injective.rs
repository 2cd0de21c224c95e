//! Injectivity with respect to monomorphisms.
//!
//! A quiver is *loaded* when every ordered pair of vertices (including
//! `(v, v)`) has at least one edge between them. The mono-injective quivers
//! are exactly the loaded quivers with at least one vertex, and every quiver
//! embeds mono-essentially into one: its *loading*, which adds a single edge
//! `(1,v,w)` wherever `v -> w` had none. The empty quiver is the exception;
//! its envelope is the single loop.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::id::Id;
use crate::limits::QuiverCongruence;
use crate::morphism::QuiverMorphism;
use crate::quiver::Quiver;
use crate::reflections::build_b;
use crate::report::CheckReport;

/// Ids of the edges from `v` to `w`.
pub fn edges_between(j: &Quiver, v: &Id, w: &Id) -> Result<Vec<Id>> {
    let vi = j.vertex_index(v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
    let wi = j.vertex_index(w).ok_or_else(|| Error::UnknownVertex(w.clone()))?;
    Ok(j.edges_between_indices(vi, wi).map(|e| j.edge(e).clone()).collect())
}

/// For each ordered vertex pair, the smallest edge between them.
fn min_edge_table(j: &Quiver) -> Vec<Vec<Option<usize>>> {
    let n = j.vertex_count();
    let mut table = vec![vec![None; n]; n];
    // edges are in id order, so the first hit per pair is the minimum
    for e in 0..j.edge_count() {
        table[j.src(e)][j.tgt(e)].get_or_insert(e);
    }
    table
}

pub fn is_loaded(j: &Quiver) -> bool {
    min_edge_table(j).iter().flatten().all(Option::is_some)
}

/// Loaded and nonempty.
pub fn is_mono_injective(j: &Quiver) -> bool {
    j.vertex_count() > 0 && is_loaded(j)
}

/// A vertex pair with no edge between them, if any.
pub fn missing_pair(j: &Quiver) -> Option<(Id, Id)> {
    let table = min_edge_table(j);
    for (v, row) in table.iter().enumerate() {
        for (w, cell) in row.iter().enumerate() {
            if cell.is_none() {
                return Some((j.vertex(v).clone(), j.vertex(w).clone()));
            }
        }
    }
    None
}

/// Where an element of the codomain of a mono `phi: D -> C` sits relative to
/// the image of `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgePart {
    /// In the image of the edge map.
    Image(usize),
    /// Both endpoints outside the vertex image.
    Outside,
    /// Both endpoints in the vertex image, edge itself not in the image.
    Between,
    /// Source in the vertex image, target outside.
    Leaving,
    /// Source outside, target in the vertex image.
    Entering,
}

/// Extends `psi: D -> J` along the mono `phi: D -> C` to a map `C -> J`.
///
/// Vertices of `C` outside the image of `phi` all go to the smallest vertex
/// `w` of `J`. An edge in the image goes where `psi` sends its preimage;
/// every other edge goes to the smallest edge of `J` between the images of
/// its endpoints, which exists because `J` is loaded.
pub fn extend_along_mono(phi: &QuiverMorphism, psi: &QuiverMorphism) -> Result<QuiverMorphism> {
    if phi.dom() != psi.dom() {
        return Err(Error::DomainMismatch("extended map"));
    }
    if !phi.is_mono() {
        return Err(Error::NotMono);
    }
    let (c, j) = (phi.cod(), psi.cod());
    if !is_mono_injective(j) {
        return Err(Error::NotMonoInjective);
    }
    let mut vertex_pre = vec![None; c.vertex_count()];
    for (x, &y) in phi.vertex_map().iter().enumerate() {
        vertex_pre[y] = Some(x);
    }
    let mut edge_pre = vec![None; c.edge_count()];
    for (x, &y) in phi.edge_map().iter().enumerate() {
        edge_pre[y] = Some(x);
    }
    let table = min_edge_table(j);
    let edge_from = |a: usize, b: usize| table[a][b].expect("loaded target");
    let w = 0;

    let vmap: Vec<usize> = vertex_pre
        .iter()
        .map(|pre| pre.map_or(w, |x| psi.vertex_map()[x]))
        .collect();
    let emap = (0..c.edge_count())
        .map(|e| {
            let (s, t) = (c.src(e), c.tgt(e));
            let part = match (edge_pre[e], vertex_pre[s].is_some(), vertex_pre[t].is_some()) {
                (Some(y), _, _) => EdgePart::Image(y),
                (None, false, false) => EdgePart::Outside,
                (None, true, true) => EdgePart::Between,
                (None, true, false) => EdgePart::Leaving,
                (None, false, true) => EdgePart::Entering,
            };
            match part {
                EdgePart::Image(y) => psi.edge_map()[y],
                EdgePart::Outside => edge_from(w, w),
                EdgePart::Between => edge_from(vmap[s], vmap[t]),
                EdgePart::Leaving => edge_from(vmap[s], w),
                EdgePart::Entering => edge_from(w, vmap[t]),
            }
        })
        .collect();
    Ok(QuiverMorphism::from_indices_unchecked(c.clone(), j.clone(), vmap, emap))
}

/// Which condition of mono-essentiality failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EssentialCriterion {
    /// Empty domain, but the codomain has more than one vertex or edge.
    EmptyDomainCodomainTooLarge { vertices: usize, edges: usize },
    /// A codomain vertex outside the image.
    VertexNotInImage { vertex: Id },
    /// `v -> w` has edges in the domain, yet the codomain has an edge
    /// between their images that is not the image of one of them.
    EdgeNotInImage { source: Id, target: Id, image_edge: Id, extra_edge: Id },
    /// `v -> w` has no edges in the domain, yet the codomain has two or more
    /// between their images.
    ParallelNewEdges { source: Id, target: Id, first: Id, second: Id },
}

/// A failed criterion together with a congruence on the codomain whose
/// quotient map `q` is not monic while `q ∘ phi` is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EssentialFailure {
    pub criterion: EssentialCriterion,
    pub witness: QuiverCongruence,
}

impl fmt::Display for EssentialFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.criterion {
            EssentialCriterion::EmptyDomainCodomainTooLarge { vertices, edges } => write!(
                f,
                "domain is empty but the codomain has {vertices} vertices and {edges} edges"
            ),
            EssentialCriterion::VertexNotInImage { vertex } => {
                write!(f, "vertex {vertex} is not in the image")
            }
            EssentialCriterion::EdgeNotInImage { source, target, image_edge, extra_edge } => write!(
                f,
                "edge {extra_edge} runs parallel to {image_edge} over {source} -> {target} but is not in the image"
            ),
            EssentialCriterion::ParallelNewEdges { source, target, first, second } => write!(
                f,
                "{first} and {second} both run over {source} -> {target}, which has no edge in the domain"
            ),
        }
    }
}

/// Decides whether the mono `phi: D -> C` is mono-essential.
///
/// For empty `D` this holds iff `C` has at most one vertex and at most one
/// edge. Otherwise it holds iff (1) `phi` is bijective on vertices, (2) for
/// every pair `v, w` with edges in `D`, the edges between their images are
/// exactly the images of those edges, and (3) for every pair with no edges in
/// `D`, their images have at most one edge between them. The report names the
/// first failure and a quotient witnessing it.
pub fn is_mono_essential(phi: &QuiverMorphism) -> Result<CheckReport<EssentialFailure>> {
    if !phi.is_mono() {
        return Err(Error::NotMono);
    }
    let (d, c) = (phi.dom(), phi.cod());
    let fail = |criterion, vertex_labels: Vec<usize>, edge_labels: Vec<usize>| {
        let witness = QuiverCongruence::from_labels(c, &vertex_labels, &edge_labels)
            .expect("witness relation is a congruence");
        Ok(CheckReport::failed(EssentialFailure { criterion, witness }))
    };
    let discrete_v = || (0..c.vertex_count()).collect::<Vec<_>>();
    let discrete_e = || (0..c.edge_count()).collect::<Vec<_>>();

    if d.vertex_count() == 0 {
        if c.vertex_count() <= 1 && c.edge_count() <= 1 {
            return Ok(CheckReport::ok());
        }
        // collapse onto the single loop
        return fail(
            EssentialCriterion::EmptyDomainCodomainTooLarge {
                vertices: c.vertex_count(),
                edges: c.edge_count(),
            },
            vec![0; c.vertex_count()],
            vec![0; c.edge_count()],
        );
    }

    // (1) bijective on vertices
    let mut hit = vec![false; c.vertex_count()];
    for &y in phi.vertex_map() {
        hit[y] = true;
    }
    if let Some(v) = hit.iter().position(|&b| !b) {
        let w = phi.vertex_map().iter().copied().min().expect("nonempty domain");
        let mut labels = discrete_v();
        labels[v] = w;
        return fail(
            EssentialCriterion::VertexNotInImage { vertex: c.vertex(v).clone() },
            labels,
            discrete_e(),
        );
    }

    let mut in_image = vec![false; c.edge_count()];
    for &y in phi.edge_map() {
        in_image[y] = true;
    }
    let pairs = || (0..d.vertex_count()).flat_map(|v| (0..d.vertex_count()).map(move |w| (v, w)));

    // (2) pairs with edges in D are matched exactly
    for (v, w) in pairs() {
        let Some(e0) = d.edges_between_indices(v, w).next() else { continue };
        let (pv, pw) = (phi.vertex_map()[v], phi.vertex_map()[w]);
        if let Some(extra) = c.edges_between_indices(pv, pw).find(|&f| !in_image[f]) {
            let image_edge = phi.edge_map()[e0];
            let mut labels = discrete_e();
            labels[extra] = image_edge;
            return fail(
                EssentialCriterion::EdgeNotInImage {
                    source: d.vertex(v).clone(),
                    target: d.vertex(w).clone(),
                    image_edge: c.edge(image_edge).clone(),
                    extra_edge: c.edge(extra).clone(),
                },
                discrete_v(),
                labels,
            );
        }
    }

    // (3) pairs without edges in D gain at most one
    for (v, w) in pairs() {
        if d.edges_between_indices(v, w).next().is_some() {
            continue;
        }
        let (pv, pw) = (phi.vertex_map()[v], phi.vertex_map()[w]);
        let mut between = c.edges_between_indices(pv, pw);
        if let (Some(first), Some(second)) = (between.next(), between.next()) {
            let mut labels = discrete_e();
            labels[second] = first;
            return fail(
                EssentialCriterion::ParallelNewEdges {
                    source: d.vertex(v).clone(),
                    target: d.vertex(w).clone(),
                    first: c.edge(first).clone(),
                    second: c.edge(second).clone(),
                },
                discrete_v(),
                labels,
            );
        }
    }
    Ok(CheckReport::ok())
}

/// The loading of `d`: same vertices, every edge `e` renamed `(0,e)`, plus a
/// new edge `(1,v,w)` from `v` to `w` for every pair with no edge.
pub fn loading(d: &Quiver) -> Quiver {
    let table = min_edge_table(d);
    let mut edges: Vec<Id> = d.edges().iter().map(|e| Id::tagged(0, [e.clone()])).collect();
    let mut src = d.sources().to_vec();
    let mut tgt = d.targets().to_vec();
    for (v, row) in table.iter().enumerate() {
        for (w, cell) in row.iter().enumerate() {
            if cell.is_none() {
                edges.push(Id::tagged(1, [d.vertex(v).clone(), d.vertex(w).clone()]));
                src.push(v);
                tgt.push(w);
            }
        }
    }
    Quiver::from_sorted_parts(d.vertices().to_vec(), edges, src, tgt)
}

/// The mono-injective envelope: the loading with its canonical embedding
/// (identity on vertices, `e` to `(0,e)`), or the single loop `B({1})` with
/// the empty map when `d` has no vertices.
pub fn envelope(d: &Quiver) -> (Quiver, QuiverMorphism) {
    if d.vertex_count() == 0 {
        let one = build_b([Id::name("1")]);
        let j = QuiverMorphism::from_indices_unchecked(d.clone(), one.clone(), Vec::new(), Vec::new());
        return (one, j);
    }
    let l = loading(d);
    // the (0,e) edges sort first and keep the order of e
    let j = QuiverMorphism::from_indices_unchecked(
        d.clone(),
        l.clone(),
        (0..d.vertex_count()).collect(),
        (0..d.edge_count()).collect(),
    );
    (l, j)
}
