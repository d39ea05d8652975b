use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("element is not central: commutator with {generator} is {commutator}")]
    NotCentral { generator: String, commutator: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("height {height} exceeds the truncation cap {cap}")]
    Truncation { height: u32, cap: u32 },

    #[error("unsupported scope: {0}")]
    Unsupported(String),
}
