use thiserror::Error;

pub type Result<T, E = PauliError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PauliError {
    #[error("site count mismatch: {left} vs {right}")]
    SiteMismatch { left: usize, right: usize },

    #[error("{n} sites do not fit in a {width}-bit string")]
    TooManySites { n: usize, width: usize },

    #[error("site {site} is outside 1..={n}")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("site {0} appears more than once in a string")]
    DuplicateSite(usize),

    #[error("unknown Pauli symbol {0:?}")]
    BadSymbol(String),

    #[error("operator is not translation invariant: {label} has no matching translate")]
    NotTranslationInvariant { label: String },

    #[error("dense oracle limited to {max} sites, got {n}")]
    DenseTooLarge { n: usize, max: usize },

    #[error("initial operator has zero norm")]
    ZeroOperator,

    #[error("keep-list of {keep} strings does not fit in a trim of {max_strings}")]
    KeepExceedsTrim { keep: usize, max_strings: usize },

    #[error("unknown initial operator {0:?}")]
    UnknownInitial(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
