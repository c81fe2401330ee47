use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("non-finite coordinate at index {index}: {value}")]
    NonFiniteCoordinate { index: usize, value: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("map undefined at point {point:?}: no guard component contains it")]
    MapUndefined { point: Vec<f64> },

    #[error(
        "not a contraction: alpha_hat = {alpha_hat}, violations = {violations} \
         (require alpha_hat < 1 and violations = 0)"
    )]
    NotAContraction { alpha_hat: f64, violations: usize },

    #[error("no orbit converged within {max_iterations} iterations; per-seed final residuals: {diagnostics:?}")]
    NoConvergence {
        max_iterations: usize,
        diagnostics: Vec<(usize, f64)>,
    },

    #[error("residual incomparable: point and its image share no component")]
    IncomparableResidual,

    #[error(
        "metric axiom check failed: {definiteness} definiteness, {symmetry} symmetry, \
         {triangle} triangle failures"
    )]
    AxiomViolation {
        definiteness: usize,
        symmetry: usize,
        triangle: usize,
    },

    #[error("disks {first} and {second} are not nested: center of disk {second} lies outside disk {first}")]
    NestingViolation { first: usize, second: usize },

    #[error("disk radii must be strictly decreasing: radius[{index}] = {current} >= radius[{}] = {previous}", index - 1)]
    RadiiNotDecreasing {
        index: usize,
        previous: f64,
        current: f64,
    },

    #[error("precondition violated for sequence '{which}': {reason}")]
    SequencePrecondition { which: String, reason: String },

    #[error("scenario validation failed: {0}")]
    Validation(String),

    #[error("scenario parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
