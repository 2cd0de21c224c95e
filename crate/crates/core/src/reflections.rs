//! The four canonical quivers built from a set, and their universal maps.
//!
//! `I(S)` and `M(S)` are free on a set of vertices and a set of edges
//! respectively, so a function out of `S` lifts uniquely to a morphism out of
//! them. `K(S)` and `B(S)` are cofree, so a function into `S` colifts
//! uniquely to a morphism into them.
//!
//! Naming: `M(S)` has vertices `(0,s)` and `(1,s)`, `K(S)` has edges `(s,t)`,
//! and the single vertex of `B(S)` is the label `1`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::id::Id;
use crate::morphism::QuiverMorphism;
use crate::quiver::Quiver;

/// Name of the only vertex of a bouquet.
pub fn bouquet_vertex() -> Id {
    Id::name("1")
}

fn set(s: impl IntoIterator<Item = Id>) -> Vec<Id> {
    s.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// `I(S)`: vertices `S`, no edges.
pub fn build_i(s: impl IntoIterator<Item = Id>) -> Quiver {
    Quiver::from_sorted_parts(set(s), Vec::new(), Vec::new(), Vec::new())
}

/// `M(S)`: one arrow `(0,s) -> (1,s)` named `s` for every `s`.
pub fn build_m(s: impl IntoIterator<Item = Id>) -> Quiver {
    let s = set(s);
    let vertices = s
        .iter()
        .map(|x| Id::tagged(0, [x.clone()]))
        .chain(s.iter().map(|x| Id::tagged(1, [x.clone()])))
        .collect();
    let n = s.len();
    Quiver::from_sorted_parts(vertices, s, (0..n).collect(), (n..2 * n).collect())
}

/// `K(S)`: vertices `S`, one edge `(s,t)` from `s` to `t` for every ordered pair.
pub fn build_k(s: impl IntoIterator<Item = Id>) -> Quiver {
    let s = set(s);
    let n = s.len();
    let mut edges = Vec::with_capacity(n * n);
    let mut src = Vec::with_capacity(n * n);
    let mut tgt = Vec::with_capacity(n * n);
    for (i, a) in s.iter().enumerate() {
        for (j, b) in s.iter().enumerate() {
            edges.push(Id::pair(a.clone(), b.clone()));
            src.push(i);
            tgt.push(j);
        }
    }
    Quiver::from_sorted_parts(s, edges, src, tgt)
}

/// `B(S)`: the vertex `1` with one loop per element of `S`.
pub fn build_b(s: impl IntoIterator<Item = Id>) -> Quiver {
    let s = set(s);
    let n = s.len();
    Quiver::from_sorted_parts(vec![bouquet_vertex()], s, vec![0; n], vec![0; n])
}

/// The unique `I(S) -> G` whose vertex map is `phi`.
pub fn lift_i(
    s: impl IntoIterator<Item = Id>,
    g: &Quiver,
    mut phi: impl FnMut(&Id) -> Id,
) -> Result<QuiverMorphism> {
    let dom = build_i(s);
    let vmap = dom
        .vertices()
        .iter()
        .map(|x| {
            let image = phi(x);
            g.vertex_index(&image).ok_or(Error::UnknownVertex(image))
        })
        .collect::<Result<_>>()?;
    Ok(QuiverMorphism::from_indices_unchecked(dom, g.clone(), vmap, Vec::new()))
}

/// The unique `M(S) -> G` whose edge map is `psi`; `(0,s)` goes to the
/// source of `psi(s)` and `(1,s)` to its target.
pub fn lift_m(
    s: impl IntoIterator<Item = Id>,
    g: &Quiver,
    mut psi: impl FnMut(&Id) -> Id,
) -> Result<QuiverMorphism> {
    let dom = build_m(s);
    let emap: Vec<usize> = dom
        .edges()
        .iter()
        .map(|x| {
            let image = psi(x);
            g.edge_index(&image).ok_or(Error::UnknownEdge(image))
        })
        .collect::<Result<_>>()?;
    let vmap = emap.iter().map(|&f| g.src(f)).chain(emap.iter().map(|&f| g.tgt(f))).collect();
    Ok(QuiverMorphism::from_indices_unchecked(dom, g.clone(), vmap, emap))
}

/// The unique `G -> K(S)` whose vertex map is `chi`; an edge goes to the pair
/// of its endpoint images.
pub fn colift_k(
    g: &Quiver,
    s: impl IntoIterator<Item = Id>,
    mut chi: impl FnMut(&Id) -> Id,
) -> Result<QuiverMorphism> {
    let cod = build_k(s);
    let n = cod.vertex_count();
    let vmap: Vec<usize> = g
        .vertices()
        .iter()
        .map(|v| {
            let image = chi(v);
            cod.vertex_index(&image).ok_or(Error::UnknownVertex(image))
        })
        .collect::<Result<_>>()?;
    // edges of K(S) are sorted as (s,t) pairs, so (i,j) sits at i*n + j
    let emap = (0..g.edge_count()).map(|e| vmap[g.src(e)] * n + vmap[g.tgt(e)]).collect();
    Ok(QuiverMorphism::from_indices_unchecked(g.clone(), cod, vmap, emap))
}

/// The unique `G -> B(S)` whose edge map is `xi`. Every vertex goes to `1`.
pub fn colift_b(
    g: &Quiver,
    s: impl IntoIterator<Item = Id>,
    mut xi: impl FnMut(&Id) -> Id,
) -> Result<QuiverMorphism> {
    let cod = build_b(s);
    let emap = g
        .edges()
        .iter()
        .map(|e| {
            let image = xi(e);
            cod.edge_index(&image).ok_or(Error::UnknownEdge(image))
        })
        .collect::<Result<_>>()?;
    Ok(QuiverMorphism::from_indices_unchecked(g.clone(), cod, vec![0; g.vertex_count()], emap))
}
