use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polylogarithm limit order must be non-negative, got {0}")]
    NegativeOrder(i32),

    #[error("polynomial order must be -1 or larger, got {0}")]
    InvalidPolyOrder(i32),

    #[error("falling factorial index out of range: m = {m}, i = {i}")]
    FactorialRange { m: u32, i: u32 },

    #[error("total degree {degree} exceeds the cap of {cap}")]
    DegreeCap { degree: u32, cap: u32 },

    #[error("segment cut coefficient `a` must be nonzero")]
    ZeroCoefficient,

    #[error("normal vector must be nonzero")]
    ZeroNormal,

    #[error("dimension {dim} outside the supported range 1..={max}")]
    Dimension { dim: usize, max: usize },

    #[error("expected {expected} {field}, got {got}")]
    Arity {
        field: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("`{0}` must be finite")]
    NonFinite(&'static str),

    #[error("Gram matrix is not positive definite (breakdown at basis entry {index})")]
    NotPositiveDefinite { index: usize },

    #[error("{0}")]
    Unsupported(String),
}
