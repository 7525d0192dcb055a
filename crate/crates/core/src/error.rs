use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("angles must be finite (theta = {theta}, phi = {phi})")]
    NonFiniteAngle { theta: f64, phi: f64 },

    #[error("polar angle theta = {0} lies outside [0, pi]")]
    PolarAngleOutOfRange(f64),

    #[error("total spin must be 0 or 1 (got {0})")]
    InvalidTotalSpin(u8),

    #[error("projection M must be -1, 0 or 1 (got {0})")]
    InvalidProjection(i8),

    #[error("the singlet (s = 0) only admits M = 0 (got M = {0})")]
    SingletRequiresZeroProjection(i8),

    #[error("invalid outcome label {0:?}; expected one of \"++\", \"+-\", \"-+\", \"--\"")]
    InvalidOutcomeLabel(String),

    #[error("probability {value} for outcome {outcome} lies outside [-1e-9, 1 + 1e-9]")]
    ProbabilityOutOfRange { outcome: String, value: f64 },

    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(f64),

    #[error("dimension mismatch: vector has {vector}, operator has {operator}")]
    DimensionMismatch { vector: usize, operator: usize },

    #[error("basis mismatch: vector is in {vector}, operator is in {operator}")]
    BasisMismatch {
        vector: &'static str,
        operator: &'static str,
    },

    #[error("{basis} basis requires dimension {expected} (got {actual})")]
    BadDimension {
        basis: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("state vector norm is {0}, not 1")]
    NotUnitNorm(f64),

    #[error("operator is not Hermitian (max |R_ij - conj(R_ji)| = {0})")]
    NotHermitian(f64),

    #[error("expectation value has imaginary part {0}")]
    ComplexExpectation(f64),

    #[error("outcome values must be finite")]
    NonFiniteOutcomeValue,

    #[error("sample size must be at least 1")]
    EmptySample,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
