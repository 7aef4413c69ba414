use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("sublattice generators are linearly dependent")]
    DependentGenerators,

    #[error("ray {index} is not primitive (gcd of its entries is {gcd})")]
    NotPrimitive { index: usize, gcd: String },

    #[error("cone is not full-dimensional (ray rank {rank} < lattice rank {lattice_rank}); quotient by the orthogonal lattice first")]
    NotFullDimensional { rank: usize, lattice_rank: usize },

    #[error("cone is not strictly convex")]
    NotStrictlyConvex,

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("degrees are not comparable: {from} is not below {to}")]
    NotComparable { from: String, to: String },

    #[error("morphism is not natural at {from} -> {to}")]
    NaturalityViolation { from: String, to: String },

    #[error("invalid poset diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("rays do not span the lattice rationally (rank {rank} < {lattice_rank})")]
    RaysDoNotSpan { rank: usize, lattice_rank: usize },

    #[error("index {index} out of range (size {len})")]
    InvalidIndex { index: usize, len: usize },

    #[error("invalid degree box: {0}")]
    InvalidBox(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("unknown check suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn fmt_vec<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}
