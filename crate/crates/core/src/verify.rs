//! Exhaustive small-model suites.
//!
//! Each suite enumerates every quiver up to a size bound (vertices `v1..`,
//! edges `e1..`, all incidence assignments) and checks a characterization
//! against a brute-force oracle that follows the definition directly:
//! congruences for essential monos, subquivers for coessential epis, and
//! lift/colift search for injectivity and projectivity.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::homsearch::{
    count_homs, enumerate_colifts, enumerate_homs, enumerate_lifts, enumerate_quivers,
    is_injective_wrt, is_projective_wrt, SearchBudget,
};
use crate::injective::{envelope, is_loaded, is_mono_essential, is_mono_injective};
use crate::limits::{
    coequalizer, coproduct, enumerate_congruences, enumerate_subquivers, equalizer, product,
    quotient, QuiverCongruence, Subquiver,
};
use crate::morphism::{compose, QuiverMorphism};
use crate::projective::{cover, is_epi_coessential, is_epi_projective, is_epi_projective_structural};
use crate::quiver::Quiver;

/// Size bound: at most `vmax` vertices and `emax` edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub vmax: usize,
    pub emax: usize,
}

impl Bounds {
    pub const fn new(vmax: usize, emax: usize) -> Self {
        Bounds { vmax, emax }
    }

    pub fn quivers(self) -> Vec<Quiver> {
        enumerate_quivers(self.vmax, self.emax).collect()
    }
}

/// How many instances a suite checked and what went wrong.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: u64,
    pub failed: u64,
    /// Instances where the property under test held; shows that an oracle
    /// comparison saw both answers.
    pub held: u64,
    /// The first few failures, described.
    pub examples: Vec<String>,
}

const MAX_EXAMPLES: usize = 10;

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
    held: u64,
    examples: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn note(&mut self, held: bool) {
        self.held += u64::from(held);
    }

    fn fail(&mut self, message: String) {
        self.failed += 1;
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(message);
        }
    }

    /// Runs a fallible check, counting an error as a failure.
    fn run(&mut self, what: impl FnOnce() -> String, f: impl FnOnce(&mut Tally) -> Result<()>) {
        if let Err(err) = f(self) {
            self.checked += 1;
            self.fail(format!("{}: {err}", what()));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failed += other.failed;
        self.held += other.held;
        let room = MAX_EXAMPLES.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
        self
    }

    fn into_report(self, name: &str) -> SuiteReport {
        SuiteReport {
            name: name.to_owned(),
            checked: self.checked,
            failed: self.failed,
            held: self.held,
            examples: self.examples,
        }
    }
}

fn run_suite<T: Sync>(name: &str, items: &[T], check: impl Fn(&T, &mut Tally) + Sync) -> SuiteReport {
    items
        .par_iter()
        .map(|item| {
            let mut tally = Tally::default();
            check(item, &mut tally);
            tally
        })
        .reduce(Tally::default, Tally::merge)
        .into_report(name)
}

fn fits(q: &Quiver, v: usize, e: usize) -> bool {
    q.vertex_count() <= v && q.edge_count() <= e
}

/// Envelopes are loaded and mono-injective, and their embeddings are monic
/// and mono-essential.
pub fn envelope_suite(bounds: Bounds) -> SuiteReport {
    run_suite("envelope", &bounds.quivers(), |d, t| {
        let (l, j) = envelope(d);
        t.check(is_loaded(&l) && is_mono_injective(&l), || format!("envelope of {d} is not loaded"));
        t.check(j.is_mono(), || format!("envelope map of {d} is not monic"));
        t.run(
            || format!("envelope of {d}"),
            |t| {
                let report = is_mono_essential(&j)?;
                t.check(report.holds(), || format!("envelope map of {d} is not essential"));
                Ok(())
            },
        );
    })
}

/// Covers are epi-projective, and their maps are epic, bijective on edges
/// and epi-coessential.
pub fn cover_suite(bounds: Bounds) -> SuiteReport {
    run_suite("cover", &bounds.quivers(), |g, t| {
        let (x, p) = cover(g);
        t.check(is_epi_projective(&x), || format!("cover of {g} is not epi-projective"));
        t.check(p.is_epi(), || format!("covering map of {g} is not epic"));
        let mut seen = vec![false; g.edge_count()];
        let bijective = p.edge_map().len() == g.edge_count()
            && p.edge_map().iter().all(|&y| !std::mem::replace(&mut seen[y], true));
        t.check(bijective, || format!("covering map of {g} is not bijective on edges"));
        t.run(
            || format!("cover of {g}"),
            |t| {
                let report = is_epi_coessential(&p)?;
                t.check(report.holds(), || format!("covering map of {g} is not coessential"));
                Ok(())
            },
        );
    })
}

fn injective_on(values: impl Iterator<Item = usize>, size: usize) -> bool {
    let mut seen = vec![false; size];
    values.into_iter().all(|y| !std::mem::replace(&mut seen[y], true))
}

/// By definition: `phi` is mono-essential iff every quotient `q` of the
/// codomain with `q ∘ phi` monic is itself monic.
pub fn essential_oracle(phi: &QuiverMorphism, congruences: &[QuiverCongruence]) -> bool {
    let c = phi.cod();
    congruences.iter().all(|cong| {
        let (vr, er) = (cong.vertex_representatives(), cong.edge_representatives());
        let composite_mono = injective_on(phi.vertex_map().iter().map(|&v| vr[v]), c.vertex_count())
            && injective_on(phi.edge_map().iter().map(|&e| er[e]), c.edge_count());
        !composite_mono || cong.is_discrete()
    })
}

/// By definition: `phi` is epi-coessential iff every subquiver `N` of the
/// domain whose inclusion composes to an epi is the whole domain.
pub fn coessential_oracle(phi: &QuiverMorphism, subquivers: &[Subquiver]) -> bool {
    let h = phi.cod();
    subquivers.iter().all(|sub| {
        let mut hit_v = vec![false; h.vertex_count()];
        for (v, &y) in phi.vertex_map().iter().enumerate() {
            hit_v[y] |= sub.contains_vertex(v);
        }
        let mut hit_e = vec![false; h.edge_count()];
        for (e, &y) in phi.edge_map().iter().enumerate() {
            hit_e[y] |= sub.contains_edge(e);
        }
        let composite_epi = hit_v.iter().chain(&hit_e).all(|&b| b);
        !composite_epi || sub.is_whole()
    })
}

/// `is_mono_essential` against [`essential_oracle`] for every monic `D -> C`
/// with `C` in bounds. Reported witnesses are checked as well.
pub fn essential_oracle_suite(bounds: Bounds, budget: SearchBudget) -> SuiteReport {
    let all = bounds.quivers();
    run_suite("essential-oracle", &all, |c, t| {
        t.run(
            || format!("monos into {c}"),
            |t| {
                let congruences = enumerate_congruences(c)?;
                for d in all.iter().filter(|d| fits(d, c.vertex_count(), c.edge_count())) {
                    for phi in enumerate_homs(d, c, budget) {
                        let phi = phi?;
                        if !phi.is_mono() {
                            continue;
                        }
                        let report = is_mono_essential(&phi)?;
                        let expected = essential_oracle(&phi, &congruences);
                        t.note(expected);
                        t.check(report.holds() == expected, || {
                            format!("{phi:?}: checker says {}, oracle says {expected}", report.holds())
                        });
                        if let Some(failure) = report.first() {
                            let (_, q) = quotient(&failure.witness);
                            let sound = !q.is_mono() && compose(&q, &phi)?.is_mono();
                            t.check(sound, || format!("{phi:?}: unsound witness for {failure}"));
                        }
                    }
                }
                Ok(())
            },
        );
    })
}

/// `is_epi_coessential` against [`coessential_oracle`] for every epic
/// `G -> H` with `G` in bounds. Reported witnesses are checked as well.
pub fn coessential_oracle_suite(bounds: Bounds, budget: SearchBudget) -> SuiteReport {
    let all = bounds.quivers();
    run_suite("coessential-oracle", &all, |g, t| {
        t.run(
            || format!("epis out of {g}"),
            |t| {
                let subquivers = enumerate_subquivers(g)?;
                for h in all.iter().filter(|h| fits(h, g.vertex_count(), g.edge_count())) {
                    for phi in enumerate_homs(g, h, budget) {
                        let phi = phi?;
                        if !phi.is_epi() {
                            continue;
                        }
                        let report = is_epi_coessential(&phi)?;
                        let expected = coessential_oracle(&phi, &subquivers);
                        t.note(expected);
                        t.check(report.holds() == expected, || {
                            format!("{phi:?}: checker says {}, oracle says {expected}", report.holds())
                        });
                        if let Some(failure) = report.first() {
                            let iota = failure.witness.inclusion();
                            let sound = !iota.is_epi() && compose(&phi, &iota)?.is_epi();
                            t.check(sound, || format!("{phi:?}: unsound witness for {failure}"));
                        }
                    }
                }
                Ok(())
            },
        );
    })
}

fn morphisms_where(
    sides: &[Quiver],
    budget: SearchBudget,
    keep: impl Fn(&QuiverMorphism) -> bool,
) -> Result<Vec<QuiverMorphism>> {
    let mut out = Vec::new();
    for a in sides {
        for b in sides {
            for m in enumerate_homs(a, b, budget) {
                let m = m?;
                if keep(&m) {
                    out.push(m);
                }
            }
        }
    }
    Ok(out)
}

/// `is_mono_injective(J)` against "every map into `J` extends along every
/// mono", for `J` within `targets` and monos between quivers within `sides`.
pub fn injective_lifting_suite(targets: Bounds, sides: Bounds, budget: SearchBudget) -> SuiteReport {
    let monos = match morphisms_where(&sides.quivers(), budget, QuiverMorphism::is_mono) {
        Ok(monos) => monos,
        Err(err) => return failed_setup("injective-lifting", err),
    };
    run_suite("injective-lifting", &targets.quivers(), |j, t| {
        t.run(
            || format!("lifting into {j}"),
            |t| {
                let mut oracle = true;
                for phi in &monos {
                    if !is_injective_wrt(j, phi, budget)? {
                        oracle = false;
                        break;
                    }
                }
                let claimed = is_mono_injective(j);
                t.note(oracle);
                t.check(claimed == oracle, || format!("{j}: checker says {claimed}, oracle says {oracle}"));
                Ok(())
            },
        );
    })
}

/// `is_epi_projective(P)` against "every map out of `P` factors through
/// every epi", for `P` and the epis all within `bounds`.
pub fn projective_lifting_suite(bounds: Bounds, budget: SearchBudget) -> SuiteReport {
    let all = bounds.quivers();
    let epis = match morphisms_where(&all, budget, QuiverMorphism::is_epi) {
        Ok(epis) => epis,
        Err(err) => return failed_setup("projective-lifting", err),
    };
    run_suite("projective-lifting", &all, |p, t| {
        t.run(
            || format!("lifting out of {p}"),
            |t| {
                let mut oracle = true;
                for phi in &epis {
                    if !is_projective_wrt(p, phi, budget)? {
                        oracle = false;
                        break;
                    }
                }
                let claimed = is_epi_projective(p);
                t.note(oracle);
                t.check(claimed == oracle, || format!("{p}: checker says {claimed}, oracle says {oracle}"));
                Ok(())
            },
        );
    })
}

/// The covering-map definition of epi-projectivity against the incidence
/// conditions.
pub fn structural_projective_suite(bounds: Bounds) -> SuiteReport {
    run_suite("projective-structural", &bounds.quivers(), |p, t| {
        let (a, b) = (is_epi_projective(p), is_epi_projective_structural(p));
        t.note(b);
        t.check(a == b, || format!("{p}: covering map says {a}, incidence says {b}"));
    })
}

fn failed_setup(name: &str, err: crate::error::Error) -> SuiteReport {
    let mut tally = Tally::default();
    tally.check(false, || format!("setup: {err}"));
    tally.into_report(name)
}

/// Mediating maps of products, coproducts, equalizers and coequalizers exist
/// and are unique, for objects within `objects` and test objects within
/// `tests`.
///
/// Uniqueness is checked by counting: for products there are exactly
/// `|Hom(T,G)|·|Hom(T,H)|` maps into `G × H`, and dually for coproducts; for
/// (co)equalizers the search finds exactly one factorization.
pub fn universal_property_suite(objects: Bounds, tests: Bounds, budget: SearchBudget) -> SuiteReport {
    let objs = objects.quivers();
    let tests = tests.quivers();
    let pairs: Vec<(&Quiver, &Quiver)> =
        objs.iter().flat_map(|g| objs.iter().map(move |h| (g, h))).collect();
    run_suite("universal-properties", &pairs, |&(g, h), t| {
        t.run(|| format!("limits over {g} and {h}"), |t| {
            check_product(g, h, &tests, budget, t)?;
            check_coproduct(g, h, &tests, budget, t)?;
            check_equalizers(g, h, &tests, budget, t)
        });
    })
}

fn homs(a: &Quiver, b: &Quiver, budget: SearchBudget) -> Result<Vec<QuiverMorphism>> {
    enumerate_homs(a, b, budget).collect()
}

fn check_product(g: &Quiver, h: &Quiver, tests: &[Quiver], budget: SearchBudget, t: &mut Tally) -> Result<()> {
    let prod = product(g, h);
    for x in tests {
        let (to_g, to_h) = (homs(x, g, budget)?, homs(x, h, budget)?);
        for f in &to_g {
            for k in &to_h {
                let m = prod.mediate(f, k)?;
                let ok = compose(&prod.left, &m)? == *f && compose(&prod.right, &m)? == *k;
                t.check(ok, || format!("product {g} × {h}: mediating map from {x} does not commute"));
            }
        }
        let total = count_homs(x, &prod.object, budget)?;
        let expected = (to_g.len() * to_h.len()) as u64;
        t.check(total == expected, || {
            format!("product {g} × {h}: {total} maps from {x}, expected {expected}")
        });
    }
    Ok(())
}

fn check_coproduct(g: &Quiver, h: &Quiver, tests: &[Quiver], budget: SearchBudget, t: &mut Tally) -> Result<()> {
    let sum = coproduct(g, h);
    for x in tests {
        let (from_g, from_h) = (homs(g, x, budget)?, homs(h, x, budget)?);
        for f in &from_g {
            for k in &from_h {
                let m = sum.mediate(f, k)?;
                let ok = compose(&m, &sum.left)? == *f && compose(&m, &sum.right)? == *k;
                t.check(ok, || format!("coproduct {g} ∐ {h}: mediating map to {x} does not commute"));
            }
        }
        let total = count_homs(&sum.object, x, budget)?;
        let expected = (from_g.len() * from_h.len()) as u64;
        t.check(total == expected, || {
            format!("coproduct {g} ∐ {h}: {total} maps to {x}, expected {expected}")
        });
    }
    Ok(())
}

fn exactly_one(search: crate::homsearch::HomSearch) -> Result<bool> {
    let mut n = 0;
    for m in search {
        m?;
        n += 1;
        if n > 1 {
            break;
        }
    }
    Ok(n == 1)
}

fn check_equalizers(a: &Quiver, b: &Quiver, tests: &[Quiver], budget: SearchBudget, t: &mut Tally) -> Result<()> {
    let parallel = homs(a, b, budget)?;
    for (i, f) in parallel.iter().enumerate() {
        for g in &parallel[i..] {
            let (_, e) = equalizer(f, g)?;
            t.check(compose(f, &e)? == compose(g, &e)?, || format!("equalizer of {f:?}, {g:?} is not a cone"));
            let (_, q) = coequalizer(f, g)?;
            t.check(compose(&q, f)? == compose(&q, g)?, || {
                format!("coequalizer of {f:?}, {g:?} is not a cocone")
            });
            for x in tests {
                for k in homs(x, a, budget)? {
                    if compose(f, &k)? == compose(g, &k)? {
                        let unique = exactly_one(enumerate_colifts(&k, &e, budget)?)?;
                        t.check(unique, || format!("equalizer of {f:?}, {g:?}: no unique factorization of {k:?}"));
                    }
                }
                for k in homs(b, x, budget)? {
                    if compose(&k, f)? == compose(&k, g)? {
                        let unique = exactly_one(enumerate_lifts(&k, &q, budget)?)?;
                        t.check(unique, || {
                            format!("coequalizer of {f:?}, {g:?}: no unique factorization of {k:?}")
                        });
                    }
                }
            }
        }
    }
    Ok(())
}
