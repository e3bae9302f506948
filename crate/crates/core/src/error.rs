use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A model, region or layout parameter is outside its valid range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A function argument lies outside the domain of the law being evaluated.
    #[error("domain error: {0}")]
    Domain(String),

    /// The scenario cannot be run as configured.
    #[error("configuration error: {0}")]
    Config(String),

    /// A statistic cannot be estimated from the given sample.
    #[error("estimator error: {0}")]
    Estimator(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub(crate) fn require_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!(
            "{name} must be finite and > 0, got {value}"
        )))
    }
}

pub(crate) fn require_nonnegative(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be finite and >= 0, got {value}"
        )))
    }
}
