use thiserror::Error;

use crate::id::Id;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid quiver morphism: {0}")]
    InvalidMorphism(String),
    #[error("morphisms are not composable: codomain of the first differs from domain of the second")]
    NotComposable,
    #[error("morphisms do not share a domain and codomain")]
    NotParallel,
    #[error("{0} does not share its domain with the other map")]
    DomainMismatch(&'static str),
    #[error("{0} does not share its codomain with the other map")]
    CodomainMismatch(&'static str),
    #[error("morphism is not an isomorphism")]
    NotIso,
    #[error("morphism is not a monomorphism")]
    NotMono,
    #[error("morphism is not an epimorphism")]
    NotEpi,
    #[error("quiver is not mono-injective (it must be loaded with at least one vertex)")]
    NotMonoInjective,
    #[error("quiver is not epi-projective")]
    NotEpiProjective,
    #[error("unknown vertex {0}")]
    UnknownVertex(Id),
    #[error("unknown edge {0}")]
    UnknownEdge(Id),
    #[error("assignment for {0} is missing")]
    MissingAssignment(Id),
    #[error("search budget exhausted after {steps} candidate assignments")]
    BudgetExhausted { steps: u64 },
    #[error("search time limit exceeded after {steps} candidate assignments")]
    TimeLimitExceeded { steps: u64 },
    #[error("enumeration size guard exceeded: {0}")]
    SizeGuard(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
