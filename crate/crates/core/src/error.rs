use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter domain: {0}")]
    Domain(String),
    #[error("size: {0}")]
    Size(String),
    #[error("gamma function pole at x = {0}")]
    Pole(f64),
    #[error("no sign change on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },
    #[error("invalid interval [{lo}, {hi}]: {reason}")]
    Interval { lo: f64, hi: f64, reason: String },
    #[error("{0} did not converge")]
    Convergence(String),
    #[error("root out of range: {0}")]
    RootOutOfRange(String),
    #[error("argument {arg} outside validated range {range}")]
    Range { arg: f64, range: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
