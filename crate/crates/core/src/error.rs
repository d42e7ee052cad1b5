use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus in [2, 2^31)")]
    InvalidModulus(u64),

    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("matrix is singular")]
    Singular,

    /// A map of a zigzag module has the wrong shape. `arrow` is 1-based.
    #[error("arrow {arrow}: expected a {expected_rows}x{expected_cols} matrix, found {rows}x{cols}")]
    MapShape {
        arrow: usize,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("filtration function is not non-decreasing")]
    NonMonotoneFiltration,

    #[error("simplicial complex: {0}")]
    Complex(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Raised when an internal consistency check fails (for example a
    /// negative interval multiplicity). Always indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
