use thiserror::Error;

/// Errors raised by samplers, solvers and estimators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point {0} lies outside the domain")]
    OutsideDomain(String),
    #[error("evaluation at |z| = {z} beyond certified radius {radius}")]
    OutsideRadius { z: f64, radius: f64 },
    #[error("truncation degree {needed} exceeds cap {cap}")]
    TruncationCap { needed: usize, cap: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("root within {margin:e} of the boundary |z| = {radius}")]
    BoundaryProximity { radius: f64, margin: f64 },
    #[error("root count {roots} disagrees with contour count {contour}")]
    CountMismatch { roots: usize, contour: i64 },
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("support of test function not inside certified window")]
    SupportOutsideWindow,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("tail bound {bound:e} exceeds cap {cap:e}")]
    TailBoundOverflow { bound: f64, cap: f64 },
    #[error("rejection rate too high ({0})")]
    RejectionRate(String),
    #[error("too few samples: {0}")]
    TooFewSamples(String),
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },
    #[error("replication {index} (seed {seed}, path {path:?}): {source}")]
    Sample { index: u64, seed: u64, path: Vec<u64>, source: Box<Error> },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// The underlying error, without replication context.
    pub fn root(&self) -> &Error {
        match self {
            Error::Sample { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
