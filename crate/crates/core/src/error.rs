use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("sample grid is not strictly increasing at index {index}")]
    NonMonotoneGrid { index: usize },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("r = {r} lies outside the profile domain [{a}, {b}]")]
    OutOfDomain { r: f64, a: f64, b: f64 },
    #[error("removable singularity at r = {r} cannot be evaluated: {reason}")]
    Singularity { r: f64, reason: String },
    #[error("u = e^f must be positive, got {value} at r = {r}")]
    NonPositiveU { r: f64, value: f64 },
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("invalid density: {0}")]
    InvalidDensity(String),
    #[error("bridge construction violates {constraint} at r = {r} (value {value})")]
    BridgeConstraint { constraint: &'static str, r: f64, value: f64 },
    #[error("adaptive quadrature did not converge on [{a}, {b}]")]
    Quadrature { a: f64, b: f64 },
    #[error("linear feasibility solver failed: {0}")]
    Solver(String),
    #[error("unknown gallery entry `{0}`")]
    UnknownGallery(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
