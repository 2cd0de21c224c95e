//! Exhaustive enumeration of quiver homomorphisms.
//!
//! The search assigns edges first, in edge order: choosing an image for an
//! edge forces the images of both its endpoints, and any clash with an
//! earlier choice prunes the branch immediately. Vertices touched by no edge
//! are assigned last. Solutions come out in lexicographic order of
//! (edge images, free vertex images).
//!
//! Every query runs under a [`SearchBudget`]. Running out of budget is an
//! error, never a silent "no morphism".

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::id::Id;
use crate::morphism::QuiverMorphism;
use crate::quiver::Quiver;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of candidate assignments tried.
    pub max_steps: u64,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub const DEFAULT_STEPS: u64 = 100_000_000;

    pub fn new(max_steps: u64) -> Self {
        SearchBudget { max_steps: max_steps.max(1), time_limit: None }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(Self::DEFAULT_STEPS)
    }
}

#[derive(Debug, Clone, Copy)]
enum Var {
    Edge(usize),
    Vertex(usize),
}

const UNSET: usize = usize::MAX;

/// Streaming backtracking search over morphisms `dom -> cod`, optionally
/// restricted to prescribed candidate images per vertex and per edge.
pub struct HomSearch {
    dom: Quiver,
    cod: Quiver,
    vars: Vec<Var>,
    candidates: Vec<Vec<usize>>,
    allowed_vertex: Vec<Vec<bool>>,
    choice: Vec<usize>,
    mark: Vec<usize>,
    vmap: Vec<usize>,
    emap: Vec<usize>,
    trail: Vec<usize>,
    level: usize,
    steps: u64,
    budget: SearchBudget,
    started: Instant,
    done: bool,
}

impl HomSearch {
    fn new(
        dom: &Quiver,
        cod: &Quiver,
        allowed_vertex: Vec<Vec<bool>>,
        edge_candidates: Vec<Vec<usize>>,
        budget: SearchBudget,
    ) -> HomSearch {
        let mut vars = Vec::new();
        let mut candidates = Vec::new();
        for (e, cands) in edge_candidates.into_iter().enumerate() {
            vars.push(Var::Edge(e));
            candidates.push(cands);
        }
        for (v, allowed) in allowed_vertex.iter().enumerate() {
            if dom.is_independent_index(v) {
                vars.push(Var::Vertex(v));
                candidates.push((0..cod.vertex_count()).filter(|&w| allowed[w]).collect());
            }
        }
        let n = vars.len();
        HomSearch {
            dom: dom.clone(),
            cod: cod.clone(),
            vars,
            candidates,
            allowed_vertex,
            choice: vec![0; n],
            mark: vec![0; n],
            vmap: vec![UNSET; dom.vertex_count()],
            emap: vec![UNSET; dom.edge_count()],
            trail: Vec::new(),
            level: 0,
            steps: 0,
            budget,
            started: Instant::now(),
            done: false,
        }
    }

    fn unrestricted(dom: &Quiver, cod: &Quiver, budget: SearchBudget) -> HomSearch {
        let allowed = vec![vec![true; cod.vertex_count()]; dom.vertex_count()];
        let edges = vec![(0..cod.edge_count()).collect(); dom.edge_count()];
        HomSearch::new(dom, cod, allowed, edges, budget)
    }

    /// Candidate assignments tried so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn charge(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget.max_steps {
            return Err(Error::BudgetExhausted { steps: self.budget.max_steps });
        }
        if let Some(limit) = self.budget.time_limit {
            if self.steps.is_multiple_of(1024) && self.started.elapsed() > limit {
                return Err(Error::TimeLimitExceeded { steps: self.steps });
            }
        }
        Ok(())
    }

    fn undo_to(&mut self, mark: usize) {
        for v in self.trail.drain(mark..) {
            self.vmap[v] = UNSET;
        }
    }

    fn bind_vertex(&mut self, v: usize, w: usize) -> bool {
        match self.vmap[v] {
            UNSET if self.allowed_vertex[v][w] => {
                self.vmap[v] = w;
                self.trail.push(v);
                true
            }
            current => current == w,
        }
    }

    fn try_assign(&mut self, level: usize, candidate: usize) -> bool {
        match self.vars[level] {
            Var::Edge(e) => {
                let (s, t) = (self.dom.src(e), self.dom.tgt(e));
                if self.bind_vertex(s, self.cod.src(candidate))
                    && self.bind_vertex(t, self.cod.tgt(candidate))
                {
                    self.emap[e] = candidate;
                    true
                } else {
                    let mark = self.mark[level];
                    self.undo_to(mark);
                    false
                }
            }
            Var::Vertex(v) => self.bind_vertex(v, candidate),
        }
    }

    fn emit(&self) -> QuiverMorphism {
        QuiverMorphism::from_indices_unchecked(
            self.dom.clone(),
            self.cod.clone(),
            self.vmap.clone(),
            self.emap.clone(),
        )
    }
}

impl Iterator for HomSearch {
    type Item = Result<QuiverMorphism>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let n = self.vars.len();
        loop {
            if self.level == n {
                let found = self.emit();
                if n == 0 {
                    self.done = true;
                } else {
                    self.level = n - 1;
                }
                return Some(Ok(found));
            }
            let level = self.level;
            let mark = self.mark[level];
            self.undo_to(mark);
            let mut advanced = false;
            while self.choice[level] < self.candidates[level].len() {
                let candidate = self.candidates[level][self.choice[level]];
                self.choice[level] += 1;
                if let Err(e) = self.charge() {
                    self.done = true;
                    return Some(Err(e));
                }
                if self.try_assign(level, candidate) {
                    advanced = true;
                    break;
                }
            }
            if advanced {
                self.level += 1;
                if self.level < n {
                    self.choice[self.level] = 0;
                    self.mark[self.level] = self.trail.len();
                }
            } else if level == 0 {
                self.done = true;
                return None;
            } else {
                self.level -= 1;
            }
        }
    }
}

/// Every morphism `g -> h`, each exactly once, in canonical order.
pub fn enumerate_homs(g: &Quiver, h: &Quiver, budget: SearchBudget) -> HomSearch {
    HomSearch::unrestricted(g, h, budget)
}

pub fn count_homs(g: &Quiver, h: &Quiver, budget: SearchBudget) -> Result<u64> {
    count(enumerate_homs(g, h, budget))
}

fn count(search: HomSearch) -> Result<u64> {
    let mut n = 0;
    for m in search {
        m?;
        n += 1;
    }
    Ok(n)
}

fn first(mut search: HomSearch) -> Result<Option<QuiverMorphism>> {
    search.next().transpose()
}

/// Every `lift: B -> J` with `lift ∘ phi = psi`, for `psi: A -> J` and
/// `phi: A -> B`.
pub fn enumerate_lifts(
    psi: &QuiverMorphism,
    phi: &QuiverMorphism,
    budget: SearchBudget,
) -> Result<HomSearch> {
    if psi.dom() != phi.dom() {
        return Err(Error::DomainMismatch("lifting map"));
    }
    let (b, j) = (phi.cod(), psi.cod());
    let mut allowed = vec![vec![true; j.vertex_count()]; b.vertex_count()];
    for (a, &target) in phi.vertex_map().iter().enumerate() {
        let want = psi.vertex_map()[a];
        for (w, ok) in allowed[target].iter_mut().enumerate() {
            *ok &= w == want;
        }
    }
    let mut edges: Vec<Vec<usize>> = vec![(0..j.edge_count()).collect(); b.edge_count()];
    for (a, &target) in phi.edge_map().iter().enumerate() {
        let want = psi.edge_map()[a];
        edges[target].retain(|&f| f == want);
    }
    Ok(HomSearch::new(b, j, allowed, edges, budget))
}

pub fn find_lift(
    psi: &QuiverMorphism,
    phi: &QuiverMorphism,
    budget: SearchBudget,
) -> Result<Option<QuiverMorphism>> {
    first(enumerate_lifts(psi, phi, budget)?)
}

/// Every `colift: P -> G` with `phi ∘ colift = psi`, for `psi: P -> H` and
/// `phi: G -> H`.
pub fn enumerate_colifts(
    psi: &QuiverMorphism,
    phi: &QuiverMorphism,
    budget: SearchBudget,
) -> Result<HomSearch> {
    if psi.cod() != phi.cod() {
        return Err(Error::CodomainMismatch("lifting map"));
    }
    let (p, g) = (psi.dom(), phi.dom());
    let allowed = psi
        .vertex_map()
        .iter()
        .map(|&want| phi.vertex_map().iter().map(|&x| x == want).collect())
        .collect();
    let edges = psi
        .edge_map()
        .iter()
        .map(|&want| (0..g.edge_count()).filter(|&f| phi.edge_map()[f] == want).collect())
        .collect();
    Ok(HomSearch::new(p, g, allowed, edges, budget))
}

pub fn find_colift(
    psi: &QuiverMorphism,
    phi: &QuiverMorphism,
    budget: SearchBudget,
) -> Result<Option<QuiverMorphism>> {
    first(enumerate_colifts(psi, phi, budget)?)
}

/// `j` is injective with respect to `phi: A -> B`: every `A -> J` extends
/// along `phi`.
pub fn is_injective_wrt(j: &Quiver, phi: &QuiverMorphism, budget: SearchBudget) -> Result<bool> {
    Ok(injectivity_counterexample(j, phi, budget)?.is_none())
}

/// A map `A -> J` that does not extend along `phi`, if any.
pub fn injectivity_counterexample(
    j: &Quiver,
    phi: &QuiverMorphism,
    budget: SearchBudget,
) -> Result<Option<QuiverMorphism>> {
    for psi in enumerate_homs(phi.dom(), j, budget) {
        let psi = psi?;
        if find_lift(&psi, phi, budget)?.is_none() {
            return Ok(Some(psi));
        }
    }
    Ok(None)
}

/// `p` is projective with respect to `phi: G -> H`: every `P -> H` factors
/// through `phi`.
pub fn is_projective_wrt(p: &Quiver, phi: &QuiverMorphism, budget: SearchBudget) -> Result<bool> {
    Ok(projectivity_counterexample(p, phi, budget)?.is_none())
}

pub fn projectivity_counterexample(
    p: &Quiver,
    phi: &QuiverMorphism,
    budget: SearchBudget,
) -> Result<Option<QuiverMorphism>> {
    for psi in enumerate_homs(p, phi.cod(), budget) {
        let psi = psi?;
        if find_colift(&psi, phi, budget)?.is_none() {
            return Ok(Some(psi));
        }
    }
    Ok(None)
}

/// Some isomorphism `g -> h`, if the quivers are isomorphic.
pub fn find_isomorphism(g: &Quiver, h: &Quiver, budget: SearchBudget) -> Result<Option<QuiverMorphism>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    first_iso(enumerate_homs(g, h, budget))
}

/// Some isomorphism `theta: A -> B` over a common codomain: `b ∘ theta = a`
/// for `a: A -> H` and `b: B -> H`.
pub fn find_isomorphism_over(
    a: &QuiverMorphism,
    b: &QuiverMorphism,
    budget: SearchBudget,
) -> Result<Option<QuiverMorphism>> {
    first_iso(enumerate_colifts(a, b, budget)?)
}

/// Some isomorphism `theta: B -> C` under a common domain: `theta ∘ a = b`
/// for `a: D -> B` and `b: D -> C`.
pub fn find_isomorphism_under(
    a: &QuiverMorphism,
    b: &QuiverMorphism,
    budget: SearchBudget,
) -> Result<Option<QuiverMorphism>> {
    first_iso(enumerate_lifts(b, a, budget)?)
}

fn first_iso(search: HomSearch) -> Result<Option<QuiverMorphism>> {
    for m in search {
        let m = m?;
        if m.is_iso() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// All quivers with vertices `v1..vk` (`k <= vmax`) and edges `e1..em`
/// (`m <= emax`) under every source/target assignment: `k^(2m)` quivers for
/// each `(k, m)`, so a vertex-free quiver has no edges.
pub fn enumerate_quivers(vmax: usize, emax: usize) -> impl Iterator<Item = Quiver> {
    (0..=vmax).flat_map(move |k| {
        (0..=emax).flat_map(move |m| {
            let total = if k == 0 && m > 0 { 0 } else { (k as u64).pow(2 * m as u32) };
            (0..total).map(move |code| quiver_from_code(k, m, code))
        })
    })
}

fn quiver_from_code(k: usize, m: usize, mut code: u64) -> Quiver {
    let vertex = |i: usize| Id::name(format!("v{}", i + 1));
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let s = (code % k as u64) as usize;
        code /= k as u64;
        let t = (code % k as u64) as usize;
        code /= k as u64;
        edges.push((Id::name(format!("e{}", i + 1)), vertex(s), vertex(t)));
    }
    Quiver::new((0..k).map(vertex), edges).expect("enumerated quiver is valid")
}
