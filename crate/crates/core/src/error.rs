use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported configuration: {0}")]
    Config(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("singular point: {0}")]
    Singular(String),
    #[error("resolvent pole at lambda = (n^2-1)/8 with n = {0}")]
    Pole(i64),
    #[error("branch point at lambda = -1/8")]
    BranchPoint,
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("not in group: {0}")]
    NotInGroup(String),
    #[error("classification ambiguous: {message}")]
    Ambiguous {
        message: String,
        eigenvalues: Vec<Complex64>,
    },
    #[error("divergent series: {0}")]
    Divergent(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
