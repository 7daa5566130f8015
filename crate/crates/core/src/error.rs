use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("valuation `{valuation}` requires lattice polytopes, got non-integral vertex {vertex}")]
    LatticeMismatch { valuation: String, vertex: String },
    #[error("non-generic input: {0}")]
    NonGeneric(String),
    #[error("point is not in the affine hull of the polytope")]
    NotInAffineHull,
    #[error("Minkowski sum is not exact: {0}")]
    NonExactSum(String),
    #[error("sum dimensions differ ({0} vs {1}); only the equal-dimension case is supported")]
    UnequalDimensions(usize, usize),
    #[error("containment violated: {0}")]
    NotContained(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
