use thiserror::Error;

/// Errors for distribution, matrix, and harness operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("distribution must have at least one outcome")]
    EmptyDistribution,

    #[error("negative probability {value} at index {index}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities must sum to 1 (got {sum})")]
    ProbabilitySum { sum: f64 },

    #[error("non-finite probability {value} at index {index}")]
    NonFiniteProbability { index: usize, value: f64 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("not Hermitian (max |M - M^dag| entry = {deviation})")]
    NotHermitian { deviation: f64 },

    #[error("trace is not 1 (got {trace})")]
    InvalidTrace { trace: f64 },

    #[error("not positive semidefinite (min eigenvalue {min_eigenvalue})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("not unitary (max |U^dag U - I| entry = {deviation})")]
    NotUnitary { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("rank {rank} out of range for dimension {dim}")]
    RankOutOfRange { rank: usize, dim: usize },

    #[error("state vector has zero norm")]
    ZeroStateVector,

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("invalid file contents: {0}")]
    InvalidFormat(String),

    #[error("joint shape must have 2 or 3 axes, got {arity}")]
    UnsupportedArity { arity: usize },

    #[error("unknown check name: {name}")]
    UnknownCheck { name: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("replay input does not match check {check}")]
    ReplayMismatch { check: String },
}

pub type Result<T> = std::result::Result<T, Error>;
