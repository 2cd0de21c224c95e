//! Projectivity with respect to epimorphisms.
//!
//! The explosion `X(G)` keeps the independent vertices of `G` and pulls every
//! edge apart into its own arrow: `I(indep G) ∐ M(E(G))`. Its covering map
//! back onto `G` is epic and bijective on edges, and it is the epi-projective
//! cover of `G`. A quiver is epi-projective exactly when that map is an
//! isomorphism, i.e. when it already looks like `I(S) ∐ M(T)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::id::Id;
use crate::limits::{coproduct, Coproduct, Subquiver};
use crate::morphism::{compose, QuiverMorphism};
use crate::quiver::Quiver;
use crate::reflections::{build_i, build_m, lift_i, lift_m};
use crate::report::CheckReport;

/// Vertices with no edge starting or ending at them.
pub fn independent_vertices(g: &Quiver) -> Vec<Id> {
    independent_mask(g)
        .into_iter()
        .enumerate()
        .filter(|&(_, free)| free)
        .map(|(v, _)| g.vertex(v).clone())
        .collect()
}

fn independent_mask(g: &Quiver) -> Vec<bool> {
    let mut free = vec![true; g.vertex_count()];
    for e in 0..g.edge_count() {
        free[g.src(e)] = false;
        free[g.tgt(e)] = false;
    }
    free
}

fn exploded(g: &Quiver) -> Coproduct {
    coproduct(&build_i(independent_vertices(g)), &build_m(g.edges().iter().cloned()))
}

fn covering_from(g: &Quiver, x: &Coproduct) -> QuiverMorphism {
    let on_vertices = lift_i(x.left.dom().vertices().iter().cloned(), g, Id::clone)
        .expect("independent vertices belong to G");
    let on_edges = lift_m(g.edges().iter().cloned(), g, Id::clone).expect("edges belong to G");
    x.mediate(&on_vertices, &on_edges).expect("legs share G as codomain")
}

/// `X(G)`: an isolated vertex `(0,u)` per independent `u`, and an arrow
/// `(1,e)` from `(1,(0,e))` to `(1,(1,e))` per edge `e`.
pub fn explosion(g: &Quiver) -> Quiver {
    exploded(g).object
}

/// `p_G: X(G) -> G`, sending `(0,u)` to `u`, the arrow `(1,e)` to `e`, and its
/// ends to the source and target of `e`.
pub fn covering_map(g: &Quiver) -> QuiverMorphism {
    covering_from(g, &exploded(g))
}

/// The epi-projective cover `(X(G), p_G)`.
pub fn cover(g: &Quiver) -> (Quiver, QuiverMorphism) {
    let x = exploded(g);
    let p = covering_from(g, &x);
    (x.object, p)
}

pub fn is_epi_projective(p: &Quiver) -> bool {
    covering_map(p).is_iso()
}

/// Same answer as [`is_epi_projective`], read off the incidence data: no two
/// edges share a source, no two share a target, and no vertex is both a
/// source and a target.
pub fn is_epi_projective_structural(p: &Quiver) -> bool {
    let n = p.vertex_count();
    let (mut out, mut into) = (vec![false; n], vec![false; n]);
    for e in 0..p.edge_count() {
        let (s, t) = (p.src(e), p.tgt(e));
        if out[s] || into[t] {
            return false;
        }
        out[s] = true;
        into[t] = true;
    }
    !out.iter().zip(&into).any(|(&a, &b)| a && b)
}

/// A map `gamma: P -> G` with `phi ∘ gamma = psi`, for epi-projective `P`,
/// `psi: P -> H` and epic `phi: G -> H`.
///
/// `P` is read as `I(S) ∐ M(T)` through the inverse of its covering map; each
/// independent vertex and each edge then goes to its smallest preimage
/// under `phi`.
pub fn lift_along_epi(psi: &QuiverMorphism, phi: &QuiverMorphism) -> Result<QuiverMorphism> {
    if psi.cod() != phi.cod() {
        return Err(Error::CodomainMismatch("lifting map"));
    }
    if !phi.is_epi() {
        return Err(Error::NotEpi);
    }
    let (p, g) = (psi.dom(), phi.dom());
    let x = exploded(p);
    let decompose = covering_from(p, &x).invert().map_err(|_| Error::NotEpiProjective)?;

    let vertex_pre = |y: usize| {
        let v = phi.vertex_map().iter().position(|&z| z == y).expect("epic");
        g.vertex(v).clone()
    };
    let edge_pre = |y: usize| {
        let e = phi.edge_map().iter().position(|&z| z == y).expect("epic");
        g.edge(e).clone()
    };
    let on_vertices = lift_i(x.left.dom().vertices().iter().cloned(), g, |s| {
        vertex_pre(psi.vertex_map()[p.vertex_index(s).expect("vertex of P")])
    })?;
    let on_edges = lift_m(p.edges().iter().cloned(), g, |t| {
        edge_pre(psi.edge_map()[p.edge_index(t).expect("edge of P")])
    })?;
    compose(&x.mediate(&on_vertices, &on_edges)?, &decompose)
}

/// Which condition of epi-coessentiality failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoessentialCriterion {
    /// Two edges with the same image.
    EdgesIdentified { first: Id, second: Id, image: Id },
    /// An independent vertex whose image has an edge at it.
    IndependentMapsToIncident { vertex: Id, image: Id },
    /// An independent vertex of the codomain hit by two independent vertices.
    SeveralIndependentPreimages { vertex: Id, first: Id, second: Id },
}

/// A failed criterion with a proper subquiver `N` of the domain whose
/// inclusion still composes to an epimorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoessentialFailure {
    pub criterion: CoessentialCriterion,
    pub witness: Subquiver,
}

impl fmt::Display for CoessentialFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.criterion {
            CoessentialCriterion::EdgesIdentified { first, second, image } => {
                write!(f, "edges {first} and {second} both map to {image}")
            }
            CoessentialCriterion::IndependentMapsToIncident { vertex, image } => {
                write!(f, "independent vertex {vertex} maps to {image}, which has incident edges")
            }
            CoessentialCriterion::SeveralIndependentPreimages { vertex, first, second } => {
                write!(f, "independent vertex {vertex} has independent preimages {first} and {second}")
            }
        }
    }
}

/// Decides whether the epi `phi: G -> H` is epi-coessential: (1) it is
/// bijective on edges, (2) independent vertices go to independent vertices,
/// and (3) each independent vertex of `H` has exactly one independent
/// preimage. The report names the first failure.
pub fn is_epi_coessential(phi: &QuiverMorphism) -> Result<CheckReport<CoessentialFailure>> {
    if !phi.is_epi() {
        return Err(Error::NotEpi);
    }
    let (g, h) = (phi.dom(), phi.cod());
    let fail = |criterion, drop_vertex: Option<usize>, drop_edge: Option<usize>| {
        let vertices = (0..g.vertex_count()).map(|v| Some(v) != drop_vertex).collect();
        let edges = (0..g.edge_count()).map(|e| Some(e) != drop_edge).collect();
        let witness = Subquiver::from_masks(g, vertices, edges).expect("closed under endpoints");
        Ok(CheckReport::failed(CoessentialFailure { criterion, witness }))
    };

    // (1) injective on edges; surjectivity comes from being epic
    let mut first_hit = vec![None; h.edge_count()];
    for (e, &y) in phi.edge_map().iter().enumerate() {
        if let Some(first) = first_hit[y] {
            return fail(
                CoessentialCriterion::EdgesIdentified {
                    first: g.edge(first).clone(),
                    second: g.edge(e).clone(),
                    image: h.edge(y).clone(),
                },
                None,
                Some(e),
            );
        }
        first_hit[y] = Some(e);
    }

    // (2) independence is preserved
    let free_g = independent_mask(g);
    let free_h = independent_mask(h);
    for (v, &y) in phi.vertex_map().iter().enumerate() {
        if free_g[v] && !free_h[y] {
            return fail(
                CoessentialCriterion::IndependentMapsToIncident {
                    vertex: g.vertex(v).clone(),
                    image: h.vertex(y).clone(),
                },
                Some(v),
                None,
            );
        }
    }

    // (3) one independent preimage per independent vertex
    let mut first_pre = vec![None; h.vertex_count()];
    for (v, &y) in phi.vertex_map().iter().enumerate() {
        if !(free_g[v] && free_h[y]) {
            continue;
        }
        if let Some(first) = first_pre[y] {
            return fail(
                CoessentialCriterion::SeveralIndependentPreimages {
                    vertex: h.vertex(y).clone(),
                    first: g.vertex(first).clone(),
                    second: g.vertex(v).clone(),
                },
                Some(v),
                None,
            );
        }
        first_pre[y] = Some(v);
    }
    Ok(CheckReport::ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homsearch::{
        enumerate_homs, enumerate_quivers, find_colift, find_isomorphism, SearchBudget,
    };
    use crate::morphism::identity;
    use crate::reflections::{build_b, build_k, colift_b};

    fn n(s: &str) -> Id {
        Id::name(s)
    }

    fn tag(t: u32, x: Id) -> Id {
        Id::tagged(t, [x])
    }

    fn example() -> Quiver {
        Quiver::new(
            [n("v"), n("w"), n("u"), n("x")],
            [
                (n("e"), n("v"), n("v")),
                (n("f"), n("w"), n("x")),
                (n("g"), n("x"), n("w")),
                (n("h"), n("x"), n("w")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn independent_vertices_examples() {
        assert_eq!(independent_vertices(&example()), vec![n("u")]);
        assert_eq!(independent_vertices(&build_i([n("a"), n("b")])), vec![n("a"), n("b")]);
        assert!(independent_vertices(&build_k([n("a")])).is_empty());
    }

    #[test]
    fn explosion_of_the_example() {
        let x = explosion(&example());
        let arrow = |e: &str| (tag(1, n(e)), tag(1, tag(0, n(e))), tag(1, tag(1, n(e))));
        let mut vertices = vec![tag(0, n("u"))];
        for e in ["e", "f", "g", "h"] {
            vertices.push(tag(1, tag(0, n(e))));
            vertices.push(tag(1, tag(1, n(e))));
        }
        let expected = Quiver::new(vertices, ["e", "f", "g", "h"].map(arrow)).unwrap();
        assert_eq!(x, expected);

        let p = covering_map(&example());
        let image = |e: &str, end: u32| p.vertex_image(&tag(1, tag(end, n(e)))).unwrap().clone();
        assert_eq!(image("e", 0), n("v"));
        assert_eq!(image("e", 1), n("v"));
        assert_eq!(image("f", 0), n("w"));
        assert_eq!(image("f", 1), n("x"));
        assert_eq!(image("g", 0), n("x"));
        assert_eq!(image("h", 1), n("w"));
        assert_eq!(p.vertex_image(&tag(0, n("u"))), Some(&n("u")));
        assert!(p.is_epi());
        assert!(!p.is_mono());
        assert_eq!(p.edge_map(), &[0, 1, 2, 3]);
    }

    #[test]
    fn explosion_of_simple_shapes() {
        let i = build_i([n("a"), n("b")]);
        assert!(find_isomorphism(&explosion(&i), &i, SearchBudget::default()).unwrap().is_some());
        assert!(covering_map(&i).is_iso());
        let m = build_m([n("l")]);
        let x = explosion(&build_b([n("l")]));
        assert!(find_isomorphism(&x, &m, SearchBudget::default()).unwrap().is_some());
    }

    #[test]
    fn epi_projective_examples() {
        let shape = coproduct(&build_i([n("a")]), &build_m([n("s"), n("t")])).object;
        assert!(is_epi_projective(&shape));
        assert!(!is_epi_projective(&build_b([n("l")])));
        assert!(is_epi_projective(&Quiver::empty()));
        assert!(!is_epi_projective(&example()));
        // a path of length two shares a middle vertex
        let path = Quiver::new(
            [n("a"), n("b"), n("c")],
            [(n("e"), n("a"), n("b")), (n("f"), n("b"), n("c"))],
        )
        .unwrap();
        assert!(!is_epi_projective(&path));
    }

    #[test]
    fn structural_test_agrees() {
        for q in enumerate_quivers(3, 3) {
            assert_eq!(is_epi_projective(&q), is_epi_projective_structural(&q), "{q}");
        }
    }

    #[test]
    fn lift_along_iso_is_transport() {
        let h = build_m([n("s")]);
        let phi = identity(&h);
        let psi = identity(&h);
        assert_eq!(lift_along_epi(&psi, &phi).unwrap(), psi);
    }

    #[test]
    fn lift_cover_map_through_itself() {
        let s = [n("a"), n("b")];
        let psi = colift_b(&build_m(s.clone()), s.clone(), Id::clone).unwrap();
        let gamma = lift_along_epi(&psi, &psi).unwrap();
        assert_eq!(compose(&psi, &gamma).unwrap(), psi);
        assert!(find_colift(&psi, &psi, SearchBudget::default()).unwrap().is_some());
    }

    #[test]
    fn lift_rejects_bad_inputs() {
        let b = build_b([n("l")]);
        let id = identity(&b);
        assert_eq!(lift_along_epi(&id, &id), Err(Error::NotEpiProjective));
        let m = build_m([n("s")]);
        let inclusion = lift_i([n("p")], &m, |_| tag(0, n("s"))).unwrap();
        assert_eq!(lift_along_epi(&id, &inclusion), Err(Error::CodomainMismatch("lifting map")));
        assert_eq!(lift_along_epi(&identity(&m), &inclusion), Err(Error::NotEpi));
    }

    #[test]
    fn lift_always_commutes_small() {
        let budget = SearchBudget::default();
        let projectives: Vec<_> = enumerate_quivers(2, 1).filter(is_epi_projective).collect();
        for g in enumerate_quivers(2, 2) {
            for h in enumerate_quivers(2, 1) {
                for phi in enumerate_homs(&g, &h, budget) {
                    let phi = phi.unwrap();
                    if !phi.is_epi() {
                        continue;
                    }
                    for p in &projectives {
                        for psi in enumerate_homs(p, &h, budget) {
                            let psi = psi.unwrap();
                            let gamma = lift_along_epi(&psi, &phi).unwrap();
                            assert_eq!(compose(&phi, &gamma).unwrap(), psi);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coessential_examples() {
        let shape = coproduct(&build_i([n("a")]), &build_m([n("s")])).object;
        assert!(is_epi_coessential(&identity(&shape)).unwrap().holds());

        let s = [n("a"), n("b")];
        let bouquet = colift_b(&build_m(s.clone()), s.clone(), Id::clone).unwrap();
        assert!(is_epi_coessential(&bouquet).unwrap().holds());

        let (_, p) = cover(&build_k(s.clone()));
        assert!(is_epi_coessential(&p).unwrap().holds());
    }

    fn witness_is_sound(phi: &QuiverMorphism, failure: &CoessentialFailure) {
        let iota = failure.witness.inclusion();
        assert!(!iota.is_epi(), "{failure}");
        assert!(compose(phi, &iota).unwrap().is_epi(), "{failure}");
    }

    #[test]
    fn each_criterion_reports_a_sound_witness() {
        // (1) two parallel edges merged
        let two = Quiver::new([n("a")], [(n("e"), n("a"), n("a")), (n("f"), n("a"), n("a"))]).unwrap();
        let merge = colift_b(&two, [n("l")], |_| n("l")).unwrap();
        let report = is_epi_coessential(&merge).unwrap();
        assert_eq!(
            report.first().unwrap().criterion,
            CoessentialCriterion::EdgesIdentified { first: n("e"), second: n("f"), image: n("l") }
        );
        witness_is_sound(&merge, report.first().unwrap());

        // (2) a spare point mapped onto a loop
        let g = Quiver::new([n("a"), n("b")], [(n("e"), n("a"), n("a"))]).unwrap();
        let squash = colift_b(&g, [n("e")], Id::clone).unwrap();
        let report = is_epi_coessential(&squash).unwrap();
        assert!(matches!(
            report.first().unwrap().criterion,
            CoessentialCriterion::IndependentMapsToIncident { .. }
        ));
        witness_is_sound(&squash, report.first().unwrap());

        // (3) two points onto one
        let fold = colift_b(&build_i([n("a"), n("b")]), Vec::<Id>::new(), |_| unreachable!()).unwrap();
        let report = is_epi_coessential(&fold).unwrap();
        assert!(matches!(
            report.first().unwrap().criterion,
            CoessentialCriterion::SeveralIndependentPreimages { .. }
        ));
        witness_is_sound(&fold, report.first().unwrap());
    }

    #[test]
    fn non_epic_input_is_rejected() {
        let inclusion = lift_i([n("a")], &build_i([n("a"), n("b")]), Id::clone).unwrap();
        assert_eq!(is_epi_coessential(&inclusion), Err(Error::NotEpi));
    }

    #[test]
    fn covers_are_projective_and_coessential() {
        for g in enumerate_quivers(2, 2) {
            let (x, p) = cover(&g);
            assert!(is_epi_projective(&x));
            assert!(p.is_epi());
            assert_eq!(p.edge_map(), (0..g.edge_count()).collect::<Vec<_>>());
            assert!(is_epi_coessential(&p).unwrap().holds());
        }
    }
}
