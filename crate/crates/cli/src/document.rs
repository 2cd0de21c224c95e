//! The JSON document format for quivers and morphisms, and DOT export.
//!
//! A quiver document is `{"version": 1, "v": [...], "e": [[id, src, tgt], ...]}`
//! where `version` is optional. Ids are strings, numbers, or nested arrays;
//! a tagged id `(t, x, ...)` is written `[t, x, ...]`.
//!
//! A morphism document is `{"dom": Q, "cod": Q, "vmap": [[v, image], ...],
//! "emap": [[e, image], ...]}` with quiver documents for `dom` and `cod`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use quiver_core::morphism::validate_morphism;
use quiver_core::quiver::validate_quiver;
use quiver_core::{Id, MorphismData, Quiver, QuiverData, QuiverMorphism};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("invalid quiver: {0}")]
    Quiver(String),
    #[error("invalid morphism: {0}")]
    Morphism(String),
}

fn syntax(err: serde_json::Error) -> DocumentError {
    DocumentError::Syntax { line: err.line(), column: err.column(), message: strip_position(&err) }
}

/// serde_json appends " at line L column C"; the position is reported
/// separately.
fn strip_position(err: &serde_json::Error) -> String {
    let text = err.to_string();
    match text.rfind(" at line ") {
        Some(i) => text[..i].to_owned(),
        None => text,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub v: Vec<Id>,
    pub e: Vec<(Id, Id, Id)>,
}

impl QuiverDocument {
    pub fn of(q: &Quiver) -> Self {
        let data = q.to_data();
        QuiverDocument { version: Some(FORMAT_VERSION), v: data.vertices, e: data.edges }
    }

    pub fn into_quiver(self) -> Result<Quiver, DocumentError> {
        if let Some(v) = self.version.filter(|&v| v != FORMAT_VERSION) {
            return Err(DocumentError::Version(v));
        }
        let data = QuiverData { vertices: self.v, edges: self.e };
        let report = validate_quiver(&data);
        if !report.holds() {
            let all: Vec<String> = report.violations().iter().map(ToString::to_string).collect();
            return Err(DocumentError::Quiver(all.join("; ")));
        }
        Quiver::try_from(data).map_err(|e| DocumentError::Quiver(e.to_string()))
    }
}

/// Parses a quiver document, reporting every structural problem at once.
pub fn parse_quiver(text: &str) -> Result<Quiver, DocumentError> {
    serde_json::from_str::<QuiverDocument>(text).map_err(syntax)?.into_quiver()
}

/// Parses without building the quiver, for callers that want the raw data.
pub fn parse_quiver_data(text: &str) -> Result<QuiverData, DocumentError> {
    let doc: QuiverDocument = serde_json::from_str(text).map_err(syntax)?;
    if let Some(v) = doc.version.filter(|&v| v != FORMAT_VERSION) {
        return Err(DocumentError::Version(v));
    }
    Ok(QuiverData { vertices: doc.v, edges: doc.e })
}

pub fn serialize_quiver(q: &Quiver) -> String {
    serde_json::to_string_pretty(&QuiverDocument::of(q)).expect("ids always serialize")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDocument {
    pub dom: QuiverDocument,
    pub cod: QuiverDocument,
    pub vmap: Vec<(Id, Id)>,
    pub emap: Vec<(Id, Id)>,
}

impl MorphismDocument {
    pub fn of(m: &QuiverMorphism) -> Self {
        let data = m.to_data();
        MorphismDocument {
            dom: QuiverDocument::of(m.dom()),
            cod: QuiverDocument::of(m.cod()),
            vmap: data.vertex_map.into_iter().collect(),
            emap: data.edge_map.into_iter().collect(),
        }
    }

    pub fn into_morphism(self) -> Result<QuiverMorphism, DocumentError> {
        let dom = self.dom.into_quiver()?;
        let cod = self.cod.into_quiver()?;
        let vertex_map = unique_map(self.vmap, "vertex")?;
        let edge_map = unique_map(self.emap, "edge")?;
        let data = MorphismData { dom, cod, vertex_map, edge_map };
        if let Some(v) = validate_morphism(&data).first() {
            return Err(DocumentError::Morphism(v.to_string()));
        }
        QuiverMorphism::try_from(data).map_err(|e| DocumentError::Morphism(e.to_string()))
    }
}

fn unique_map(pairs: Vec<(Id, Id)>, what: &str) -> Result<BTreeMap<Id, Id>, DocumentError> {
    let mut map = BTreeMap::new();
    for (k, v) in pairs {
        if map.insert(k.clone(), v).is_some() {
            return Err(DocumentError::Morphism(format!("{what} {k} is mapped twice")));
        }
    }
    Ok(map)
}

pub fn parse_morphism(text: &str) -> Result<QuiverMorphism, DocumentError> {
    serde_json::from_str::<MorphismDocument>(text).map_err(syntax)?.into_morphism()
}

pub fn serialize_morphism(m: &QuiverMorphism) -> String {
    serde_json::to_string_pretty(&MorphismDocument::of(m)).expect("ids always serialize")
}

fn dot_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

/// A DOT digraph with one node per vertex and one labeled arc per edge.
/// Node names are positional; labels carry the ids.
pub fn export_dot(q: &Quiver) -> String {
    let mut out = String::from("digraph quiver {\n");
    for (i, v) in q.vertices().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", dot_escape(&v.to_string()));
    }
    for e in 0..q.edge_count() {
        let label = dot_escape(&q.edge(e).to_string());
        let _ = writeln!(out, "  n{} -> n{} [label=\"{label}\"];", q.src(e), q.tgt(e));
    }
    out.push_str("}\n");
    out
}
