use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid parameters: non-coprime frequencies, empty vectors, bad rationals.
    #[error("validation error: {0}")]
    Validation(String),

    /// A point outside the domain of a function, e.g. `x` outside `[-1, 1]^d`.
    #[error("domain error: {0}")]
    Domain(String),

    /// The evaluation point sits too close to a pole of a decomposition term.
    /// Callers are expected to resample.
    #[error("singular evaluation point: |exp(i t[{axis}]) - 1| = {distance:e} is below the guard; resample t")]
    Singular { axis: usize, distance: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
