use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid variable index: {0}")]
    InvalidVariable(String),
    #[error("mismatched variable spaces")]
    SpaceMismatch,
    #[error("derivation does not preserve the ideal: relation {relation} maps to nonzero normal form {image}")]
    NotAdmissible { relation: String, image: String },
    #[error("nilpotency cap {cap} exhausted on generator {generator}")]
    CapExhausted { cap: u32, generator: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("sign pattern not realizable over the rationals: {0}")]
    SignPattern(String),
    #[error("suspension is possibly reducible: {0}")]
    Reducible(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
