use thiserror::Error;

/// Errors raised by the exact engine, the numeric oracle and the scenario runner.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("root finding failed: {0}")]
    RootFinding(String),
    #[error("evaluation at a pole (|den(z)| = {magnitude:e})")]
    PoleEvaluation { magnitude: f64 },
    #[error("function is not in H2: pole at modulus {modulus}")]
    NotInH2 { modulus: f64 },
    #[error("zero within the disc margin of the unit circle (modulus {modulus})")]
    CircleZero { modulus: f64 },
    #[error("symbol singular near the unit circle: {0}")]
    CircleSingularity(String),
    #[error("winding number mismatch: root count {root_count}, argument principle {integral}")]
    WindingMismatch { root_count: i64, integral: i64 },
    #[error("Toeplitz kernel is trivial (winding number {winding})")]
    TrivialKernel { winding: i64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("vector is not in the kernel")]
    NotInKernel,
    #[error("numerical rank dropped from {expected} to {found}")]
    RankLoss { expected: usize, found: usize },
    #[error("subspace is not nearly S*-invariant")]
    NotNearlyInvariant,
    #[error("every element of the subspace vanishes at the origin")]
    AllVanishAtOrigin,
    #[error("inconsistency detected: {0}")]
    InconsistencyDetected(String),
    #[error("singular value gap {gap:e} below required {required:e}")]
    GapFailure { gap: f64, required: f64 },
    #[error("inner product routes disagree: {difference:e}")]
    QuadratureMismatch { difference: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("inner function does not divide: {0}")]
    NotDivisible(String),
    #[error("invalid Blaschke product: {0}")]
    InvalidBlaschke(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InconsistencyDetected(_)
            | Error::WindingMismatch { .. }
            | Error::RankLoss { .. }
            | Error::GapFailure { .. }
            | Error::QuadratureMismatch { .. }
            | Error::RootFinding(_) => 3,
            _ => 2,
        }
    }
}
