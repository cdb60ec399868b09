use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method stopped before meeting its tolerance.
    #[error("numerical error: {what} (achieved {achieved:.3e}, requested {requested:.3e})")]
    Numerical {
        what: String,
        achieved: f64,
        requested: f64,
    },

    /// The requested quantity is infinite (non-integrable moment or tail).
    #[error("divergent: {0}")]
    Divergent(String),

    /// The critical equation has no root because the tail constant is too large.
    #[error("supercritical: {0}")]
    Supercritical(String),

    /// A statistical estimator was given unusable data.
    #[error("estimation error: {0}")]
    Estimation(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
