use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0} is not prime")]
    NotPrime(u128),
    #[error("point is not on the surface")]
    OffSurface,
    #[error("(s, t) = ({0}, {1}) is not coprime")]
    NotCoprime(i128, i128),
    #[error("line through the base point is excluded (s(s - at) = 0)")]
    ExcludedLine,
    #[error("tangent line at the base point")]
    TangentLine,
    #[error("(s, t) lies outside the positive chamber")]
    WrongChamber,
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
