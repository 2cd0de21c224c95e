//! The `quiver` command line.
//!
//! Every command prints a JSON document on standard output (or DOT, for
//! constructions, with `--format dot`). Exit status: 0 when the property
//! holds or the construction succeeded, 1 when the property fails, 2 on
//! usage or input errors.

pub mod document;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quiver_core::homsearch::{enumerate_homs, find_colift, find_lift, SearchBudget};
use quiver_core::injective::{
    envelope, is_loaded, is_mono_essential, is_mono_injective, loading, missing_pair,
};
use quiver_core::limits::{coequalizer, coproduct, equalizer, product};
use quiver_core::projective::{cover, covering_map, explosion, is_epi_coessential, is_epi_projective};
use quiver_core::quiver::validate_quiver;
use quiver_core::reflections::build_i;
use quiver_core::verify::{
    coessential_oracle_suite, cover_suite, envelope_suite, essential_oracle_suite,
    injective_lifting_suite, projective_lifting_suite, structural_projective_suite,
    universal_property_suite, Bounds,
};
use quiver_core::{Id, Quiver, QuiverMorphism};

use document::{export_dot, parse_morphism, parse_quiver, parse_quiver_data, DocumentError, MorphismDocument, QuiverDocument};

#[derive(Debug, Parser)]
#[command(name = "quiver", version, about = "Checks and constructions on finite quivers")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Maximum candidate assignments per homomorphism search.
    #[arg(long, global = true, default_value_t = SearchBudget::DEFAULT_STEPS)]
    budget: u64,
    /// Output format; DOT applies to commands that construct a quiver.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include a full counterexample when a property fails.
    #[arg(long, global = true)]
    witness: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a quiver document for duplicate ids and dangling endpoints.
    Validate { file: PathBuf },
    /// Every ordered pair of vertices has an edge between them.
    IsLoaded { file: PathBuf },
    /// Injective with respect to all monomorphisms.
    IsInjective { file: PathBuf },
    /// Projective with respect to all epimorphisms.
    IsProjective { file: PathBuf },
    /// The mono-injective envelope and its embedding.
    Envelope { file: PathBuf },
    /// The epi-projective cover and its covering map.
    Cover { file: PathBuf },
    /// Add an edge between every pair of vertices that has none.
    Loading { file: PathBuf },
    /// Independent vertices plus one separate arrow per edge.
    Explosion { file: PathBuf },
    /// Is a monomorphism (given as a morphism document) mono-essential?
    Essential { morphism: PathBuf },
    /// Is an epimorphism (given as a morphism document) epi-coessential?
    Coessential { morphism: PathBuf },
    /// Enumerate the homomorphisms from one quiver to another.
    Homs {
        dom: PathBuf,
        cod: PathBuf,
        /// Print only the number of homomorphisms.
        #[arg(long)]
        count: bool,
    },
    Product { left: PathBuf, right: PathBuf },
    Coproduct { left: PathBuf, right: PathBuf },
    /// Equalizer of two parallel morphism documents.
    Equalizer { f: PathBuf, g: PathBuf },
    /// Coequalizer of two parallel morphism documents.
    Coequalizer { f: PathBuf, g: PathBuf },
    /// Run the exhaustive characterization suites on every small quiver.
    VerifyTheorems {
        #[arg(long, default_value_t = 2)]
        vmax: usize,
        #[arg(long, default_value_t = 2)]
        emax: usize,
    },
}

/// What a command produced: exit status and both output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Document { path: PathBuf, source: DocumentError },
    #[error("{0}")]
    Core(#[from] quiver_core::Error),
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = Result<T, CliError>;

/// A finished command: exit status plus the document to print.
enum Reply {
    Json(i32, Value),
    Text(String),
}

fn verdict(holds: bool, body: Value) -> Reply {
    let mut body = body;
    body["holds"] = json!(holds);
    Reply::Json(if holds { 0 } else { 1 }, body)
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.to_owned(), message: e.to_string() })
}

fn load_quiver(path: &Path) -> CliResult<Quiver> {
    parse_quiver(&read(path)?).map_err(|source| CliError::Document { path: path.to_owned(), source })
}

fn load_morphism(path: &Path) -> CliResult<QuiverMorphism> {
    parse_morphism(&read(path)?).map_err(|source| CliError::Document { path: path.to_owned(), source })
}

fn quiver_json(q: &Quiver) -> Value {
    serde_json::to_value(QuiverDocument::of(q)).expect("ids serialize")
}

fn morphism_json(m: &QuiverMorphism) -> Value {
    serde_json::to_value(MorphismDocument::of(m)).expect("ids serialize")
}

/// Only the two maps, for listings where domain and codomain are known.
fn maps_json(m: &QuiverMorphism) -> Value {
    let doc = MorphismDocument::of(m);
    json!({ "vmap": doc.vmap, "emap": doc.emap })
}

/// Constructions print the object as DOT, or the given JSON.
fn construction(format: Format, object: &Quiver, body: Value) -> Reply {
    match format {
        Format::Dot => Reply::Text(export_dot(object)),
        Format::Json => Reply::Json(0, body),
    }
}

/// A mono `phi` and a map `psi` into `j` that admits no extension along it.
fn injectivity_witness(j: &Quiver) -> (QuiverMorphism, QuiverMorphism) {
    let (s, t, e) = (Id::name("s"), Id::name("t"), Id::name("e"));
    let (dom, cod, images) = match missing_pair(j) {
        None => (Quiver::empty(), build_i([s]), Vec::new()),
        Some((v, w)) if v == w => {
            let cod = Quiver::new([s.clone()], [(e, s.clone(), s.clone())]).expect("a loop");
            (build_i([s.clone()]), cod, vec![(s, v)])
        }
        Some((v, w)) => {
            let cod = Quiver::new([s.clone(), t.clone()], [(e, s.clone(), t.clone())]).expect("an arrow");
            (build_i([s.clone(), t.clone()]), cod, vec![(s, v), (t, w)])
        }
    };
    let phi = QuiverMorphism::from_fns(dom.clone(), cod, Id::clone, Id::clone).expect("inclusion");
    let lookup = |x: &Id| images.iter().find(|(k, _)| k == x).map(|(_, y)| y.clone()).expect("mapped");
    let psi = QuiverMorphism::from_fns(dom, j.clone(), lookup, Id::clone).expect("vertex map");
    (phi, psi)
}

/// Why `p` is not of the form `I(S) ∐ M(T)`.
fn projectivity_reason(p: &Quiver) -> String {
    for e in 0..p.edge_count() {
        for f in e + 1..p.edge_count() {
            if p.src(e) == p.src(f) {
                return format!("edges {} and {} share the source {}", p.edge(e), p.edge(f), p.vertex(p.src(e)));
            }
            if p.tgt(e) == p.tgt(f) {
                return format!("edges {} and {} share the target {}", p.edge(e), p.edge(f), p.vertex(p.tgt(e)));
            }
        }
    }
    for v in 0..p.vertex_count() {
        if p.sources().contains(&v) && p.targets().contains(&v) {
            return format!("vertex {} is both a source and a target", p.vertex(v));
        }
    }
    "the covering map is not an isomorphism".into()
}

fn execute(cli: Cli) -> CliResult<Reply> {
    let budget = SearchBudget::new(cli.budget);
    let format = cli.format;
    let constructs = matches!(
        cli.command,
        Command::Envelope { .. }
            | Command::Cover { .. }
            | Command::Loading { .. }
            | Command::Explosion { .. }
            | Command::Product { .. }
            | Command::Coproduct { .. }
            | Command::Equalizer { .. }
            | Command::Coequalizer { .. }
    );
    if format == Format::Dot && !constructs {
        return Err(CliError::Usage("--format dot applies only to commands that construct a quiver".into()));
    }

    Ok(match cli.command {
        Command::Validate { file } => {
            let data = parse_quiver_data(&read(&file)?)
                .map_err(|source| CliError::Document { path: file.clone(), source })?;
            let report = validate_quiver(&data);
            let problems: Vec<String> = report.violations().iter().map(ToString::to_string).collect();
            verdict(
                report.holds(),
                json!({
                    "command": "validate",
                    "vertices": data.vertices.len(),
                    "edges": data.edges.len(),
                    "violations": report.violations(),
                    "reasons": problems,
                }),
            )
        }
        Command::IsLoaded { file } => {
            let q = load_quiver(&file)?;
            let missing = missing_pair(&q);
            let mut body = json!({ "command": "is-loaded" });
            if let Some((v, w)) = &missing {
                body["reason"] = json!(format!("no edge from {v} to {w}"));
                body["witness"] = json!({ "source": v, "target": w });
            }
            debug_assert_eq!(missing.is_none(), is_loaded(&q));
            verdict(missing.is_none(), body)
        }
        Command::IsInjective { file } => {
            let j = load_quiver(&file)?;
            let holds = is_mono_injective(&j);
            let mut body = json!({ "command": "is-injective" });
            if !holds {
                body["reason"] = json!(match missing_pair(&j) {
                    None => "a quiver with no vertices receives no map from a nonempty one".to_owned(),
                    Some((v, w)) => format!("no edge from {v} to {w}"),
                });
                if cli.witness {
                    let (phi, psi) = injectivity_witness(&j);
                    debug_assert!(find_lift(&psi, &phi, budget).ok().flatten().is_none());
                    body["witness"] = json!({ "mono": morphism_json(&phi), "map": morphism_json(&psi) });
                }
            }
            verdict(holds, body)
        }
        Command::IsProjective { file } => {
            let p = load_quiver(&file)?;
            let holds = is_epi_projective(&p);
            let mut body = json!({ "command": "is-projective" });
            if !holds {
                body["reason"] = json!(projectivity_reason(&p));
                if cli.witness {
                    // the identity does not factor through the covering map
                    let epi = covering_map(&p);
                    let map = QuiverMorphism::identity(&p);
                    debug_assert!(find_colift(&map, &epi, budget).ok().flatten().is_none());
                    body["witness"] = json!({ "epi": morphism_json(&epi), "map": morphism_json(&map) });
                }
            }
            verdict(holds, body)
        }
        Command::Envelope { file } => {
            let (l, j) = envelope(&load_quiver(&file)?);
            construction(format, &l, json!({ "quiver": quiver_json(&l), "map": morphism_json(&j) }))
        }
        Command::Cover { file } => {
            let (x, p) = cover(&load_quiver(&file)?);
            construction(format, &x, json!({ "quiver": quiver_json(&x), "map": morphism_json(&p) }))
        }
        Command::Loading { file } => {
            let l = loading(&load_quiver(&file)?);
            construction(format, &l, quiver_json(&l))
        }
        Command::Explosion { file } => {
            let x = explosion(&load_quiver(&file)?);
            construction(format, &x, quiver_json(&x))
        }
        Command::Essential { morphism } => {
            let phi = load_morphism(&morphism)?;
            let report = is_mono_essential(&phi)?;
            let mut body = json!({ "command": "essential" });
            if let Some(failure) = report.first() {
                body["reason"] = json!(failure.to_string());
                if cli.witness {
                    body["witness"] = serde_json::to_value(failure).expect("serializable");
                }
            }
            verdict(report.holds(), body)
        }
        Command::Coessential { morphism } => {
            let phi = load_morphism(&morphism)?;
            let report = is_epi_coessential(&phi)?;
            let mut body = json!({ "command": "coessential" });
            if let Some(failure) = report.first() {
                body["reason"] = json!(failure.to_string());
                if cli.witness {
                    body["witness"] = serde_json::to_value(failure).expect("serializable");
                }
            }
            verdict(report.holds(), body)
        }
        Command::Homs { dom, cod, count } => {
            let (g, h) = (load_quiver(&dom)?, load_quiver(&cod)?);
            let mut listed = Vec::new();
            let mut total: u64 = 0;
            for m in enumerate_homs(&g, &h, budget) {
                let m = m?;
                total += 1;
                if !count {
                    listed.push(maps_json(&m));
                }
            }
            let mut body = json!({ "command": "homs", "count": total });
            if !count {
                body["morphisms"] = Value::Array(listed);
            }
            Reply::Json(0, body)
        }
        Command::Product { left, right } => {
            let p = product(&load_quiver(&left)?, &load_quiver(&right)?);
            let body = json!({
                "quiver": quiver_json(&p.object),
                "left": maps_json(&p.left),
                "right": maps_json(&p.right),
            });
            construction(format, &p.object, body)
        }
        Command::Coproduct { left, right } => {
            let c = coproduct(&load_quiver(&left)?, &load_quiver(&right)?);
            let body = json!({
                "quiver": quiver_json(&c.object),
                "left": maps_json(&c.left),
                "right": maps_json(&c.right),
            });
            construction(format, &c.object, body)
        }
        Command::Equalizer { f, g } => {
            let (sub, e) = equalizer(&load_morphism(&f)?, &load_morphism(&g)?)?;
            let body = json!({ "subquiver": sub, "quiver": quiver_json(e.dom()), "map": maps_json(&e) });
            construction(format, e.dom(), body)
        }
        Command::Coequalizer { f, g } => {
            let (q, map) = coequalizer(&load_morphism(&f)?, &load_morphism(&g)?)?;
            construction(format, &q, json!({ "quiver": quiver_json(&q), "map": maps_json(&map) }))
        }
        Command::VerifyTheorems { vmax, emax } => {
            let bounds = Bounds::new(vmax, emax);
            let suites = [
                envelope_suite(bounds),
                cover_suite(bounds),
                structural_projective_suite(bounds),
                essential_oracle_suite(bounds, budget),
                coessential_oracle_suite(bounds, budget),
                injective_lifting_suite(bounds, bounds, budget),
                projective_lifting_suite(bounds, budget),
                universal_property_suite(bounds, bounds, budget),
            ];
            let passed = suites.iter().all(|s| s.passed());
            verdict(passed, json!({ "command": "verify-theorems", "bounds": bounds, "suites": suites }))
        }
    })
}

/// Runs one command line (including the program name) to completion.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli) {
        Ok(Reply::Json(code, body)) => Output {
            code,
            stdout: serde_json::to_string_pretty(&body).expect("json") + "\n",
            stderr: String::new(),
        },
        Ok(Reply::Text(text)) => Output { code: 0, stdout: text, stderr: String::new() },
        Err(err) => Output { code: 2, stdout: String::new(), stderr: format!("error: {err}\n") },
    }
}
