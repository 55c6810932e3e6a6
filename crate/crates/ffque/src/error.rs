use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision error: need coefficient T^-{needed}, known only below T^-{available}")]
    Precision { needed: i64, available: i64 },
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config error at line {line}, field `{field}`: {message}")]
    Config {
        line: usize,
        field: String,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
