use thiserror::Error;

use crate::Group;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("refusing to enumerate {group} with n = {n}: enumeration cap is {cap}")]
    EnumerationCap { group: Group, n: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two independent computations of the same object disagreed.
    #[error("internal mismatch in {what}: {detail}")]
    InternalMismatch { what: String, detail: String },

    #[error("non-integral coefficient {value} at index {index} in {context}")]
    NonIntegral {
        context: String,
        index: usize,
        value: String,
    },

    #[error("series has zero constant term; cannot raise to a negative power")]
    ZeroConstantTerm,

    #[error("distribution has zero variance")]
    ZeroVariance,

    #[error("distribution table is empty")]
    EmptyTable,

    #[error("type B shuffles require an odd parameter, got a = {0}")]
    EvenTypeBParameter(u64),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
