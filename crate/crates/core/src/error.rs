use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} indeterminates")]
    DimensionMismatch { left: usize, right: usize },

    #[error("truncation order mismatch: {left:?} vs {right:?}")]
    OrderMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("series is not invertible: constant coefficient is not 1")]
    NotInvertible,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("partition {parts:?} has more than {nvars} nonzero parts")]
    ShapeTooLong { parts: Vec<u32>, nvars: usize },

    #[error("not a partition (parts must be weakly decreasing): {0:?}")]
    InvalidPartition(Vec<u32>),

    #[error("torus exponent vector {0:?} has a negative last entry; central twists are not modeled")]
    UnsupportedTorus(Vec<i64>),

    #[error("expected {expected} nonzero Satake parameters, found {found}")]
    NonzeroCount { expected: usize, found: usize },

    #[error("rank mismatch: {0}")]
    Rank(String),

    #[error("invalid Weil-Deligne data: {0}")]
    InvalidRep(String),

    #[error("symbolic Frobenius scalars cannot be mixed with Steinberg blocks (block {block} has length {length})")]
    MixedSymbolicSteinberg { block: usize, length: usize },

    #[error("hypothesis (H) fails: characters {i} and {j} are ramified but their product is unramified")]
    HypothesisH { i: usize, j: usize },

    #[error("principal series required: block {block} has Steinberg length {length}")]
    NotPrincipalSeries { block: usize, length: usize },
}
