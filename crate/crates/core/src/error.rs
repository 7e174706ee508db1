use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system type {label}: valid types are {valid}")]
    InvalidType { label: String, valid: String },

    #[error("invalid Cartan datum: {0}")]
    InvalidDatum(String),

    #[error("root {0} is short; levels are only defined for long roots")]
    ShortRoot(String),

    #[error("coset enumeration exceeded cap {cap} after {partial} representatives (raise --cap)")]
    CapExceeded { cap: usize, partial: usize },

    #[error(
        "character is not invariant under the parabolic subgroup: coordinate {index} is {value}"
    )]
    NonInvariantWeight { index: usize, value: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("fixture parse error: {0}")]
    Fixture(String),
}
