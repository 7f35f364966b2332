use thiserror::Error;

/// Errors produced by the kernel and the order-structure modules built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    BadShape {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NonConvergence { sweeps: usize, off: f64 },
    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("function undefined at eigenvalue {eigenvalue:e}")]
    DomainError { eigenvalue: f64 },
    #[error("matrix is not in [0, I]: eigenvalue {eigenvalue:e} out of range")]
    OutOfInterval { eigenvalue: f64 },
    #[error("A <= B does not hold")]
    NotComparable,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("matrix is not diagonal")]
    NotDiagonal,
    #[error("input is not an effect: {0}")]
    NotAnEffect(Box<Error>),
    #[error("inversion of a certified-invertible matrix failed numerically")]
    InternalInversionFailure,
    #[error("map is not an order automorphism of [0, I]: {0}")]
    NotAutomorphism(String),
    #[error("invalid interval: {0}")]
    InvalidSpec(String),
    #[error("matrix lies outside the interval domain")]
    OutOfDomain,
    #[error("intermediate value in map chain is singular at step {step}")]
    IntermediateSingular { step: usize },
    #[error("intervals are not order isomorphic ({from} vs {to})")]
    NotIsomorphic { from: String, to: String },
}

pub type Result<T> = std::result::Result<T, Error>;
