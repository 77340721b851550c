use thiserror::Error;

/// Errors raised by constructions and verifications in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported root-system family `{0}`")]
    UnsupportedFamily(String),

    #[error("group closure exceeded {max_order} elements; generators do not generate a finite group")]
    NonFiniteGroup { max_order: usize },

    #[error("order vector is orthogonal to a root after {retries} retries")]
    Genericity { retries: usize },

    #[error("matrix is singular or rank deficient: {0}")]
    Rank(String),

    #[error("regions live in different frames")]
    FrameMismatch,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero scale factor on axis {axis}")]
    ZeroScale { axis: usize },

    #[error("dilation does not map the lattice into itself: {0}")]
    IncompatibleLattice(String),

    #[error("lattice is not rational in the working frame: {0}")]
    IrrationalLattice(String),

    #[error("unsupported transform: {0}")]
    UnsupportedTransform(String),

    #[error("lattice translate enumeration exceeded {limit} candidates")]
    EnumerationOverflow { limit: usize },

    #[error("dilation is not expansive: {0}")]
    NonExpansive(String),

    #[error("unsupported rotation order m = {0}")]
    UnsupportedOrder(u32),

    #[error("sampling plan incomplete: missing sample for lattice index {0:?}")]
    IncompletePlan(Vec<i64>),

    #[error("spectrum box {index} straddles a chamber wall; subdivide it first")]
    Straddle { index: usize },

    #[error("point lies outside the tube domain: {0}")]
    Domain(String),

    #[error("empty sampling window")]
    EmptyWindow,

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
