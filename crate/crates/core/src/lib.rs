//! Finite quivers and their injective and projective objects.
//!
//! A quiver is a directed multigraph: finite vertices, finite edges, and a
//! source and target for every edge. This crate provides
//!
//! - quivers, homomorphisms and the mono/epi/iso predicates ([`quiver`], [`morphism`]);
//! - the reflection quivers `I`, `M`, `K`, `B` and their universal maps ([`reflections`]);
//! - products, coproducts, equalizers, coequalizers and congruences ([`limits`]);
//! - exhaustive homomorphism search used as an independent oracle ([`homsearch`]);
//! - loadedness, mono-injectivity, the loading and the mono-injective envelope ([`injective`]);
//! - explosions, covering maps, epi-projectivity and the epi-projective cover ([`projective`]);
//! - exhaustive small-model suites cross-checking the characterizations ([`verify`]).

pub mod error;
pub mod homsearch;
pub mod id;
pub mod injective;
pub mod limits;
pub mod morphism;
pub mod projective;
pub mod quiver;
pub mod reflections;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use id::Id;
pub use morphism::{compose, identity, invert, is_epi, is_iso, is_mono, MorphismData, QuiverMorphism};
pub use quiver::{validate_quiver, Quiver, QuiverData};
pub use report::CheckReport;
