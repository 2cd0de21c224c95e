//! Products, coproducts, equalizers and coequalizers of quivers, plus the
//! subquivers and congruences they are built from.
//!
//! Element naming: product elements are pairs `(x,y)`, coproduct elements are
//! tagged `(0,x)` for the left summand and `(1,y)` for the right one, and a
//! quotient names each class by its minimum member.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::id::Id;
use crate::morphism::QuiverMorphism;
use crate::quiver::Quiver;

/// Tensor product together with its two projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub object: Quiver,
    pub left: QuiverMorphism,
    pub right: QuiverMorphism,
}

impl Product {
    /// The unique `T -> G × H` projecting to `f` and `g`.
    pub fn mediate(&self, f: &QuiverMorphism, g: &QuiverMorphism) -> Result<QuiverMorphism> {
        if f.dom() != g.dom() {
            return Err(Error::DomainMismatch("right leg"));
        }
        if f.cod() != self.left.cod() || g.cod() != self.right.cod() {
            return Err(Error::CodomainMismatch("cone leg"));
        }
        let nv = g.cod().vertex_count();
        let ne = g.cod().edge_count();
        let vmap = f.vertex_map().iter().zip(g.vertex_map()).map(|(&a, &b)| a * nv + b).collect();
        let emap = f.edge_map().iter().zip(g.edge_map()).map(|(&a, &b)| a * ne + b).collect();
        Ok(QuiverMorphism::from_indices_unchecked(f.dom().clone(), self.object.clone(), vmap, emap))
    }
}

pub fn product(g: &Quiver, h: &Quiver) -> Product {
    let (gv, hv, ge, he) = (g.vertex_count(), h.vertex_count(), g.edge_count(), h.edge_count());
    let mut vertices = Vec::with_capacity(gv * hv);
    for v in g.vertices() {
        for w in h.vertices() {
            vertices.push(Id::pair(v.clone(), w.clone()));
        }
    }
    let mut edges = Vec::with_capacity(ge * he);
    let (mut src, mut tgt) = (Vec::with_capacity(ge * he), Vec::with_capacity(ge * he));
    for e in 0..ge {
        for f in 0..he {
            edges.push(Id::pair(g.edge(e).clone(), h.edge(f).clone()));
            src.push(g.src(e) * hv + h.src(f));
            tgt.push(g.tgt(e) * hv + h.tgt(f));
        }
    }
    let object = Quiver::from_sorted_parts(vertices, edges, src, tgt);
    let left = QuiverMorphism::from_indices_unchecked(
        object.clone(),
        g.clone(),
        (0..gv * hv).map(|i| i / hv).collect(),
        (0..ge * he).map(|i| i / he).collect(),
    );
    let right = QuiverMorphism::from_indices_unchecked(
        object.clone(),
        h.clone(),
        (0..gv * hv).map(|i| i % hv).collect(),
        (0..ge * he).map(|i| i % he).collect(),
    );
    Product { object, left, right }
}

/// Disjoint union together with its two injections.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub object: Quiver,
    pub left: QuiverMorphism,
    pub right: QuiverMorphism,
}

impl Coproduct {
    /// The unique `G ∐ H -> T` restricting to `f` and `g`.
    pub fn mediate(&self, f: &QuiverMorphism, g: &QuiverMorphism) -> Result<QuiverMorphism> {
        if f.cod() != g.cod() {
            return Err(Error::CodomainMismatch("right leg"));
        }
        if f.dom() != self.left.dom() || g.dom() != self.right.dom() {
            return Err(Error::DomainMismatch("cocone leg"));
        }
        let vmap = f.vertex_map().iter().chain(g.vertex_map()).copied().collect();
        let emap = f.edge_map().iter().chain(g.edge_map()).copied().collect();
        Ok(QuiverMorphism::from_indices_unchecked(self.object.clone(), f.cod().clone(), vmap, emap))
    }
}

pub fn coproduct(g: &Quiver, h: &Quiver) -> Coproduct {
    let tag = |t: u32, ids: &[Id]| ids.iter().map(move |x| Id::tagged(t, [x.clone()])).collect::<Vec<_>>();
    let (gv, ge) = (g.vertex_count(), g.edge_count());
    let mut vertices = tag(0, g.vertices());
    vertices.extend(tag(1, h.vertices()));
    let mut edges = tag(0, g.edges());
    edges.extend(tag(1, h.edges()));
    let src = g.sources().iter().copied().chain(h.sources().iter().map(|&v| v + gv)).collect();
    let tgt = g.targets().iter().copied().chain(h.targets().iter().map(|&v| v + gv)).collect();
    let object = Quiver::from_sorted_parts(vertices, edges, src, tgt);
    let left = QuiverMorphism::from_indices_unchecked(
        g.clone(),
        object.clone(),
        (0..gv).collect(),
        (0..ge).collect(),
    );
    let right = QuiverMorphism::from_indices_unchecked(
        h.clone(),
        object.clone(),
        (gv..gv + h.vertex_count()).collect(),
        (ge..ge + h.edge_count()).collect(),
    );
    Coproduct { object, left, right }
}

/// A subquiver: chosen vertices and edges of `base`, closed under endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct Subquiver {
    base: Quiver,
    vertices: Vec<bool>,
    edges: Vec<bool>,
}

impl Subquiver {
    pub fn new(
        base: &Quiver,
        vertices: impl IntoIterator<Item = Id>,
        edges: impl IntoIterator<Item = Id>,
    ) -> Result<Subquiver> {
        let mut vmask = vec![false; base.vertex_count()];
        for v in vertices {
            vmask[base.vertex_index(&v).ok_or(Error::UnknownVertex(v))?] = true;
        }
        let mut emask = vec![false; base.edge_count()];
        for e in edges {
            emask[base.edge_index(&e).ok_or(Error::UnknownEdge(e))?] = true;
        }
        Subquiver::from_masks(base, vmask, emask)
    }

    pub fn from_masks(base: &Quiver, vertices: Vec<bool>, edges: Vec<bool>) -> Result<Subquiver> {
        if vertices.len() != base.vertex_count() || edges.len() != base.edge_count() {
            return Err(Error::InvalidQuiver("subquiver mask length differs from base".into()));
        }
        for e in (0..edges.len()).filter(|&e| edges[e]) {
            if !vertices[base.src(e)] || !vertices[base.tgt(e)] {
                return Err(Error::InvalidQuiver(format!(
                    "edge {} of the subquiver has an endpoint outside it",
                    base.edge(e)
                )));
            }
        }
        Ok(Subquiver { base: base.clone(), vertices, edges })
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn contains_vertex(&self, index: usize) -> bool {
        self.vertices[index]
    }

    pub fn contains_edge(&self, index: usize) -> bool {
        self.edges[index]
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &Id> + '_ {
        self.base.vertices().iter().zip(&self.vertices).filter(|(_, &b)| b).map(|(v, _)| v)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &Id> + '_ {
        self.base.edges().iter().zip(&self.edges).filter(|(_, &b)| b).map(|(e, _)| e)
    }

    pub fn is_whole(&self) -> bool {
        self.vertices.iter().chain(&self.edges).all(|&b| b)
    }

    /// The subquiver as a quiver in its own right, keeping the base's ids.
    pub fn to_quiver(&self) -> Quiver {
        self.inclusion().dom().clone()
    }

    pub fn inclusion(&self) -> QuiverMorphism {
        let vkeep: Vec<usize> = (0..self.vertices.len()).filter(|&v| self.vertices[v]).collect();
        let ekeep: Vec<usize> = (0..self.edges.len()).filter(|&e| self.edges[e]).collect();
        let mut renumber = vec![usize::MAX; self.vertices.len()];
        for (new, &old) in vkeep.iter().enumerate() {
            renumber[old] = new;
        }
        let sub = Quiver::from_sorted_parts(
            vkeep.iter().map(|&v| self.base.vertex(v).clone()).collect(),
            ekeep.iter().map(|&e| self.base.edge(e).clone()).collect(),
            ekeep.iter().map(|&e| renumber[self.base.src(e)]).collect(),
            ekeep.iter().map(|&e| renumber[self.base.tgt(e)]).collect(),
        );
        QuiverMorphism::from_indices_unchecked(sub, self.base.clone(), vkeep, ekeep)
    }
}

impl fmt::Debug for Subquiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subquiver")
            .field("vertices", &self.vertex_ids().collect::<Vec<_>>())
            .field("edges", &self.edge_ids().collect::<Vec<_>>())
            .finish()
    }
}

impl Serialize for Subquiver {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Subquiver", 2)?;
        s.serialize_field("vertices", &self.vertex_ids().collect::<Vec<_>>())?;
        s.serialize_field("edges", &self.edge_ids().collect::<Vec<_>>())?;
        s.end()
    }
}

fn check_parallel(f: &QuiverMorphism, g: &QuiverMorphism) -> Result<()> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::NotParallel);
    }
    Ok(())
}

/// The subquiver on which `f` and `g` agree, with its inclusion.
pub fn equalizer(f: &QuiverMorphism, g: &QuiverMorphism) -> Result<(Subquiver, QuiverMorphism)> {
    check_parallel(f, g)?;
    let agree = |a: &[usize], b: &[usize]| a.iter().zip(b).map(|(x, y)| x == y).collect();
    let sub = Subquiver::from_masks(
        f.dom(),
        agree(f.vertex_map(), g.vertex_map()),
        agree(f.edge_map(), g.edge_map()),
    )
    .expect("agreement set is closed under endpoints");
    let inclusion = sub.inclusion();
    Ok((sub, inclusion))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            x = std::mem::replace(&mut self.parent[x], root);
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller index as root so roots are canonical minima
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }

    fn representatives(mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

/// A quiver congruence: equivalence relations on vertices and on edges such
/// that related edges have related sources and related targets.
///
/// Each relation is stored as the index of every element's class
/// representative, which is the minimum member of the class.
#[derive(Clone, PartialEq, Eq)]
pub struct QuiverCongruence {
    base: Quiver,
    vertex_rep: Vec<usize>,
    edge_rep: Vec<usize>,
}

impl QuiverCongruence {
    pub fn discrete(base: &Quiver) -> QuiverCongruence {
        QuiverCongruence {
            base: base.clone(),
            vertex_rep: (0..base.vertex_count()).collect(),
            edge_rep: (0..base.edge_count()).collect(),
        }
    }

    /// Builds a congruence from arbitrary class labels (equal label, same
    /// class), rejecting labelings that are not compatible with endpoints.
    pub fn from_labels(base: &Quiver, vertex_labels: &[usize], edge_labels: &[usize]) -> Result<QuiverCongruence> {
        if vertex_labels.len() != base.vertex_count() || edge_labels.len() != base.edge_count() {
            return Err(Error::InvalidQuiver("congruence labeling has the wrong length".into()));
        }
        let c = QuiverCongruence {
            base: base.clone(),
            vertex_rep: canonical_reps(vertex_labels),
            edge_rep: canonical_reps(edge_labels),
        };
        for e in 0..base.edge_count() {
            let r = c.edge_rep[e];
            if c.vertex_rep[base.src(e)] != c.vertex_rep[base.src(r)]
                || c.vertex_rep[base.tgt(e)] != c.vertex_rep[base.tgt(r)]
            {
                return Err(Error::InvalidQuiver(format!(
                    "edges {} and {} are related but their endpoints are not",
                    base.edge(e),
                    base.edge(r)
                )));
            }
        }
        Ok(c)
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn vertex_representatives(&self) -> &[usize] {
        &self.vertex_rep
    }

    pub fn edge_representatives(&self) -> &[usize] {
        &self.edge_rep
    }

    pub fn vertices_related(&self, a: usize, b: usize) -> bool {
        self.vertex_rep[a] == self.vertex_rep[b]
    }

    pub fn edges_related(&self, a: usize, b: usize) -> bool {
        self.edge_rep[a] == self.edge_rep[b]
    }

    pub fn is_discrete(&self) -> bool {
        self.vertex_rep.iter().enumerate().all(|(i, &r)| i == r)
            && self.edge_rep.iter().enumerate().all(|(i, &r)| i == r)
    }

    /// Vertex classes as lists of ids, in order of their representatives.
    pub fn vertex_classes(&self) -> Vec<Vec<Id>> {
        classes(&self.vertex_rep, self.base.vertices())
    }

    pub fn edge_classes(&self) -> Vec<Vec<Id>> {
        classes(&self.edge_rep, self.base.edges())
    }

    /// `self` is contained in `other` (every related pair stays related).
    pub fn is_finer_than(&self, other: &QuiverCongruence) -> bool {
        (0..self.vertex_rep.len()).all(|v| other.vertices_related(v, self.vertex_rep[v]))
            && (0..self.edge_rep.len()).all(|e| other.edges_related(e, self.edge_rep[e]))
    }
}

fn canonical_reps(labels: &[usize]) -> Vec<usize> {
    let mut first = std::collections::HashMap::new();
    labels.iter().enumerate().map(|(i, l)| *first.entry(*l).or_insert(i)).collect()
}

fn classes(reps: &[usize], ids: &[Id]) -> Vec<Vec<Id>> {
    let mut out: Vec<Vec<Id>> = Vec::new();
    let mut slot = vec![usize::MAX; reps.len()];
    for (i, &r) in reps.iter().enumerate() {
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push(ids[i].clone());
    }
    out
}

impl fmt::Debug for QuiverCongruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuiverCongruence")
            .field("vertex_classes", &self.vertex_classes())
            .field("edge_classes", &self.edge_classes())
            .finish()
    }
}

impl Serialize for QuiverCongruence {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("QuiverCongruence", 2)?;
        s.serialize_field("vertex_classes", &self.vertex_classes())?;
        s.serialize_field("edge_classes", &self.edge_classes())?;
        s.end()
    }
}

/// The smallest congruence relating the given vertex pairs and edge pairs.
pub fn congruence_closure(
    base: &Quiver,
    vertex_pairs: &[(Id, Id)],
    edge_pairs: &[(Id, Id)],
) -> Result<QuiverCongruence> {
    let vindex = |v: &Id| base.vertex_index(v).ok_or_else(|| Error::UnknownVertex(v.clone()));
    let eindex = |e: &Id| base.edge_index(e).ok_or_else(|| Error::UnknownEdge(e.clone()));
    let vpairs = vertex_pairs
        .iter()
        .map(|(a, b)| Ok((vindex(a)?, vindex(b)?)))
        .collect::<Result<Vec<_>>>()?;
    let epairs = edge_pairs
        .iter()
        .map(|(a, b)| Ok((eindex(a)?, eindex(b)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(closure_by_index(base, &vpairs, &epairs))
}

pub(crate) fn closure_by_index(
    base: &Quiver,
    vertex_pairs: &[(usize, usize)],
    edge_pairs: &[(usize, usize)],
) -> QuiverCongruence {
    let mut edges = UnionFind::new(base.edge_count());
    for &(a, b) in edge_pairs {
        edges.union(a, b);
    }
    let edge_rep = edges.representatives();
    // Merging vertices never forces edge merges, so one propagation pass from
    // the closed edge relation reaches the fixpoint.
    let mut vertices = UnionFind::new(base.vertex_count());
    for &(a, b) in vertex_pairs {
        vertices.union(a, b);
    }
    for (e, &r) in edge_rep.iter().enumerate() {
        vertices.union(base.src(e), base.src(r));
        vertices.union(base.tgt(e), base.tgt(r));
    }
    QuiverCongruence { base: base.clone(), vertex_rep: vertices.representatives(), edge_rep }
}

/// The quotient quiver and the quotient map onto it. Classes are named by
/// their minimum member.
pub fn quotient(c: &QuiverCongruence) -> (Quiver, QuiverMorphism) {
    let base = &c.base;
    let mut vslot = vec![usize::MAX; base.vertex_count()];
    let mut vertices = Vec::new();
    for (v, &r) in c.vertex_rep.iter().enumerate() {
        if v == r {
            vslot[v] = vertices.len();
            vertices.push(base.vertex(v).clone());
        }
    }
    let mut eslot = vec![usize::MAX; base.edge_count()];
    let (mut edges, mut src, mut tgt) = (Vec::new(), Vec::new(), Vec::new());
    for (e, &r) in c.edge_rep.iter().enumerate() {
        if e == r {
            eslot[e] = edges.len();
            edges.push(base.edge(e).clone());
            src.push(vslot[c.vertex_rep[base.src(e)]]);
            tgt.push(vslot[c.vertex_rep[base.tgt(e)]]);
        }
    }
    let q = Quiver::from_sorted_parts(vertices, edges, src, tgt);
    let vmap = c.vertex_rep.iter().map(|&r| vslot[r]).collect();
    let emap = c.edge_rep.iter().map(|&r| eslot[r]).collect();
    let map = QuiverMorphism::from_indices_unchecked(base.clone(), q.clone(), vmap, emap);
    (q, map)
}

/// The quotient of the common codomain by the congruence generated by
/// identifying `f(x)` with `g(x)` for every vertex and edge `x`.
pub fn coequalizer(f: &QuiverMorphism, g: &QuiverMorphism) -> Result<(Quiver, QuiverMorphism)> {
    check_parallel(f, g)?;
    let zip = |a: &[usize], b: &[usize]| a.iter().copied().zip(b.iter().copied()).collect::<Vec<_>>();
    let c = closure_by_index(
        f.cod(),
        &zip(f.vertex_map(), g.vertex_map()),
        &zip(f.edge_map(), g.edge_map()),
    );
    Ok(quotient(&c))
}

const CONGRUENCE_GUARD: u128 = 5_000_000;
const SUBQUIVER_GUARD: usize = 22;

fn bell(n: usize) -> u128 {
    // Bell triangle
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            let last = *next.last().unwrap();
            next.push(last.saturating_add(*x));
        }
        row = next;
    }
    row[0]
}

/// Every set partition of `0..n` as a restricted growth string: element `i`
/// belongs to block `labels[i]`, and blocks are numbered by first occurrence.
pub(crate) fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, blocks: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            go(i + 1, n, blocks.max(b + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Every congruence on `base`, each exactly once.
///
/// For each edge partition the vertex relation must contain the endpoint
/// merges it forces; the admissible vertex relations are then exactly the
/// partitions of the forced classes.
pub fn enumerate_congruences(base: &Quiver) -> Result<Vec<QuiverCongruence>> {
    let bound = bell(base.vertex_count()).saturating_mul(bell(base.edge_count()));
    if bound > CONGRUENCE_GUARD {
        return Err(Error::SizeGuard(format!(
            "{} vertices and {} edges admit up to {bound} congruences",
            base.vertex_count(),
            base.edge_count()
        )));
    }
    let mut out = Vec::new();
    for edge_labels in set_partitions(base.edge_count()) {
        let forced = closure_by_index(base, &[], &label_pairs(&edge_labels));
        let reps = forced.vertex_rep.clone();
        let mut roots: Vec<usize> = reps.clone();
        roots.sort_unstable();
        roots.dedup();
        for coarse in set_partitions(roots.len()) {
            let vertex_labels: Vec<usize> = reps
                .iter()
                .map(|r| coarse[roots.binary_search(r).expect("root listed")])
                .collect();
            out.push(QuiverCongruence {
                base: base.clone(),
                vertex_rep: canonical_reps(&vertex_labels),
                edge_rep: forced.edge_rep.clone(),
            });
        }
    }
    Ok(out)
}

fn label_pairs(labels: &[usize]) -> Vec<(usize, usize)> {
    let reps = canonical_reps(labels);
    reps.iter().enumerate().filter(|(i, r)| i != *r).map(|(i, &r)| (i, r)).collect()
}

/// Every subquiver of `base`, each exactly once.
pub fn enumerate_subquivers(base: &Quiver) -> Result<Vec<Subquiver>> {
    let (nv, ne) = (base.vertex_count(), base.edge_count());
    if nv + ne > SUBQUIVER_GUARD {
        return Err(Error::SizeGuard(format!(
            "{nv} vertices and {ne} edges exceed the subquiver enumeration limit of {SUBQUIVER_GUARD} elements"
        )));
    }
    let mut out = Vec::new();
    for vmask in 0u32..(1 << nv) {
        let vertices: Vec<bool> = (0..nv).map(|v| vmask >> v & 1 == 1).collect();
        let allowed: Vec<usize> = (0..ne)
            .filter(|&e| vertices[base.src(e)] && vertices[base.tgt(e)])
            .collect();
        for emask in 0u32..(1 << allowed.len()) {
            let mut edges = vec![false; ne];
            for (bit, &e) in allowed.iter().enumerate() {
                edges[e] = emask >> bit & 1 == 1;
            }
            out.push(Subquiver { base: base.clone(), vertices: vertices.clone(), edges });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflections::{build_b, build_i, build_k, build_m, colift_b, colift_k, lift_i};

    fn n(s: &str) -> Id {
        Id::name(s)
    }

    #[test]
    fn product_of_single_loops_is_a_single_loop() {
        let p = product(&build_b([n("a")]), &build_b([n("b")]));
        assert_eq!((p.object.vertex_count(), p.object.edge_count()), (1, 1));
        assert_eq!(p.object.edges(), &[Id::pair(n("a"), n("b"))]);
    }

    #[test]
    fn product_with_edgeless_factor_has_no_edges() {
        let p = product(&build_k([n("0"), n("1")]), &build_i([n("s")]));
        assert_eq!((p.object.vertex_count(), p.object.edge_count()), (2, 0));
    }

    #[test]
    fn product_edge_count_multiplies() {
        let p = product(&build_k([n("a"), n("b")]), &build_k([n("x"), n("y"), n("z")]));
        assert_eq!(p.object.edge_count(), 4 * 9);
        assert_eq!(p.object.vertex_count(), 6);
        let e = Id::pair(Id::pair(n("a"), n("b")), Id::pair(n("z"), n("x")));
        assert_eq!(p.object.source_of(&e), Some(&Id::pair(n("a"), n("z"))));
        assert_eq!(p.object.target_of(&e), Some(&Id::pair(n("b"), n("x"))));
    }

    #[test]
    fn coproduct_tags_and_injections() {
        let c = coproduct(&build_i([n("s")]), &build_m([n("t")]));
        assert_eq!(c.object.vertex_count(), 3);
        assert!(c.object.has_vertex(&Id::tagged(0, [n("s")])));
        assert!(c.object.has_edge(&Id::tagged(1, [n("t")])));
        assert!(c.left.is_mono() && c.right.is_mono());
        let unit = coproduct(&build_b([n("a")]), &Quiver::empty());
        assert_eq!(unit.object.vertex_count(), 1);
        assert!(unit.left.is_iso());
    }

    #[test]
    fn equalizer_of_self_is_everything() {
        let f = QuiverMorphism::identity(&build_k([n("a"), n("b")]));
        let (sub, inc) = equalizer(&f, &f).unwrap();
        assert!(sub.is_whole());
        assert!(inc.is_iso());
    }

    #[test]
    fn equalizer_of_collapses_keeps_agreeing_edges() {
        let k = build_k([n("a"), n("b")]);
        let loops_to_x = |e: &Id| {
            let p = e.as_tuple().unwrap();
            if p[0] == p[1] { n("x") } else { n("y") }
        };
        let f = colift_b(&k, [n("x"), n("y")], loops_to_x).unwrap();
        let g = colift_b(&k, [n("x"), n("y")], |_| n("x")).unwrap();
        let (sub, inc) = equalizer(&f, &g).unwrap();
        assert_eq!(sub.vertex_ids().count(), 2);
        let kept: Vec<&Id> = sub.edge_ids().collect();
        assert_eq!(kept, vec![&Id::pair(n("a"), n("a")), &Id::pair(n("b"), n("b"))]);
        assert!(inc.is_mono());
    }

    #[test]
    fn equalizer_of_disagreeing_constants_is_empty() {
        let g = build_i([n("v")]);
        let f0 = colift_k(&g, [n("0"), n("1")], |_| n("0")).unwrap();
        let f1 = colift_k(&g, [n("0"), n("1")], |_| n("1")).unwrap();
        let (sub, _) = equalizer(&f0, &f1).unwrap();
        assert_eq!(sub.vertex_ids().count(), 0);
        assert!(equalizer(&f0, &QuiverMorphism::identity(&g)).is_err());
    }

    #[test]
    fn closure_without_pairs_is_discrete() {
        let c = congruence_closure(&build_m([n("e")]), &[], &[]).unwrap();
        assert!(c.is_discrete());
    }

    #[test]
    fn closure_of_one_vertex_pair() {
        let base = build_i([n("u"), n("v"), n("w")]);
        let c = congruence_closure(&base, &[(n("v"), n("w"))], &[]).unwrap();
        assert_eq!(c.vertex_classes(), vec![vec![n("u")], vec![n("v"), n("w")]]);
    }

    #[test]
    fn parallel_edge_merge_forces_no_vertex_merges() {
        let base = Quiver::new(
            [n("0"), n("1")],
            [(n("e"), n("0"), n("1")), (n("f"), n("0"), n("1"))],
        )
        .unwrap();
        let c = congruence_closure(&base, &[], &[(n("e"), n("f"))]).unwrap();
        assert_eq!(c.vertex_classes().len(), 2);
        assert_eq!(c.edge_classes(), vec![vec![n("e"), n("f")]]);
    }

    #[test]
    fn edge_merge_propagates_to_endpoints() {
        let base = build_m([n("e"), n("f")]);
        let c = congruence_closure(&base, &[], &[(n("e"), n("f"))]).unwrap();
        assert_eq!(c.vertex_classes().len(), 2);
        assert!(QuiverCongruence::from_labels(&base, &[0, 1, 2, 3], &[0, 0]).is_err());
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let base = build_m([n("e"), n("f"), n("g")]);
        let small = congruence_closure(&base, &[], &[(n("e"), n("f"))]).unwrap();
        let again = closure_by_index(&base, &label_pairs(&small.vertex_rep), &label_pairs(&small.edge_rep));
        assert_eq!(again, small);
        let big = congruence_closure(
            &base,
            &[(Id::tagged(0, [n("g")]), Id::tagged(1, [n("g")]))],
            &[(n("e"), n("f"))],
        )
        .unwrap();
        assert!(small.is_finer_than(&big));
        assert!(!big.is_finer_than(&small));
    }

    #[test]
    fn discrete_quotient_is_iso() {
        let base = build_k([n("a"), n("b")]);
        let (_, q) = quotient(&QuiverCongruence::discrete(&base));
        assert!(q.is_iso());
    }

    #[test]
    fn merging_arrow_ends_gives_a_loop() {
        let base = build_m([n("e")]);
        let c = congruence_closure(&base, &[(Id::tagged(0, [n("e")]), Id::tagged(1, [n("e")]))], &[])
            .unwrap();
        let (q, map) = quotient(&c);
        assert_eq!(q.vertices(), &[Id::tagged(0, [n("e")])]);
        assert_eq!(q.source_of(&n("e")), q.target_of(&n("e")));
        assert!(map.is_epi() && !map.is_mono());
    }

    #[test]
    fn coequalizer_of_self_is_iso() {
        let f = QuiverMorphism::identity(&build_m([n("e")]));
        let (_, q) = coequalizer(&f, &f).unwrap();
        assert!(q.is_iso());
    }

    #[test]
    fn coequalizer_of_two_points() {
        let target = build_i([n("0"), n("1")]);
        let f = lift_i([n("p")], &target, |_| n("0")).unwrap();
        let g = lift_i([n("p")], &target, |_| n("1")).unwrap();
        let (q, map) = coequalizer(&f, &g).unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert!(map.is_epi());
    }

    #[test]
    fn coequalizer_of_source_and_target_inclusions() {
        // Gluing each arrow's source to its target leaves one loop per arrow.
        let s = [n("e")];
        let m = build_m(s.clone());
        let f = lift_i(s.clone(), &m, |x| Id::tagged(0, [x.clone()])).unwrap();
        let g = lift_i(s.clone(), &m, |x| Id::tagged(1, [x.clone()])).unwrap();
        let (q, _) = coequalizer(&f, &g).unwrap();
        assert_eq!((q.vertex_count(), q.edge_count()), (1, 1));
        assert_eq!(q.source_of(&n("e")), q.target_of(&n("e")));

        let s2 = [n("e"), n("f")];
        let m2 = build_m(s2.clone());
        let f2 = lift_i(s2.clone(), &m2, |x| Id::tagged(0, [x.clone()])).unwrap();
        let g2 = lift_i(s2.clone(), &m2, |x| Id::tagged(1, [x.clone()])).unwrap();
        let (q2, _) = coequalizer(&f2, &g2).unwrap();
        assert_eq!((q2.vertex_count(), q2.edge_count()), (2, 2));
        assert!(q2.triples().all(|(_, s, t)| s == t));
    }

    #[test]
    fn congruence_counts_small() {
        assert_eq!(enumerate_congruences(&build_i([n("a")])).unwrap().len(), 1);
        assert_eq!(enumerate_congruences(&build_i([n("a"), n("b")])).unwrap().len(), 2);
        // discrete edges: Bell(4) vertex partitions; merged edges: Bell(2)
        assert_eq!(enumerate_congruences(&build_m([n("e"), n("f")])).unwrap().len(), 17);
    }

    /// Independent count: all pairs of partitions, filtered by compatibility.
    fn brute_force_congruence_count(base: &Quiver) -> usize {
        let mut count = 0;
        for vl in set_partitions(base.vertex_count()) {
            for el in set_partitions(base.edge_count()) {
                let compatible = (0..base.edge_count()).all(|e| {
                    (0..base.edge_count()).all(|f| {
                        el[e] != el[f]
                            || (vl[base.src(e)] == vl[base.src(f)] && vl[base.tgt(e)] == vl[base.tgt(f)])
                    })
                });
                if compatible {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn congruence_enumeration_matches_brute_force() {
        let cases = [
            build_m([n("e"), n("f")]),
            build_k([n("a"), n("b")]),
            build_b([n("x"), n("y"), n("z")]),
            Quiver::new(
                [n("a"), n("b"), n("c")],
                [(n("e"), n("a"), n("b")), (n("f"), n("b"), n("c")), (n("g"), n("c"), n("c"))],
            )
            .unwrap(),
        ];
        for base in &cases {
            let all = enumerate_congruences(base).unwrap();
            assert_eq!(all.len(), brute_force_congruence_count(base), "{base:?}");
            for (i, a) in all.iter().enumerate() {
                assert!(all[i + 1..].iter().all(|b| a != b));
                let vl: Vec<usize> = a.vertex_representatives().to_vec();
                let el: Vec<usize> = a.edge_representatives().to_vec();
                assert!(QuiverCongruence::from_labels(base, &vl, &el).is_ok());
            }
        }
    }

    #[test]
    fn subquiver_counts_small() {
        assert_eq!(enumerate_subquivers(&build_b([n("a")])).unwrap().len(), 3);
        assert_eq!(enumerate_subquivers(&build_i([n("a"), n("b")])).unwrap().len(), 4);
        assert_eq!(enumerate_subquivers(&build_m([n("e")])).unwrap().len(), 5);
    }

    #[test]
    fn subquiver_rejects_open_edges() {
        let m = build_m([n("e")]);
        assert!(Subquiver::new(&m, [Id::tagged(0, [n("e")])], [n("e")]).is_err());
    }

    #[test]
    fn bell_numbers() {
        let bells: Vec<u128> = (0..7).map(bell).collect();
        assert_eq!(bells, vec![1, 1, 2, 5, 15, 52, 203]);
        for k in 0..7 {
            assert_eq!(set_partitions(k).len() as u128, bell(k));
        }
    }

    #[test]
    fn size_guards() {
        let big = build_i((0..13).map(Id::nat));
        assert!(matches!(enumerate_congruences(&big), Err(Error::SizeGuard(_))));
        let many = build_i((0..30).map(Id::nat));
        assert!(matches!(enumerate_subquivers(&many), Err(Error::SizeGuard(_))));
    }
}
