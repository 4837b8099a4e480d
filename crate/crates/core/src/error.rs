use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument must be positive, got {0}")]
    NonPositive(u64),

    #[error("invalid order histogram: {0}")]
    Histogram(String),

    #[error("invalid ADE type {family}{rank}: {reason}")]
    InvalidAdeType {
        family: char,
        rank: u32,
        reason: &'static str,
    },

    #[error("cannot parse ADE token {0:?}")]
    AdeParse(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{ade} is not one of the twelve stabilizer types: {reason}")]
    OutsideAlphabet { ade: String, reason: String },

    #[error("invalid permutation: {0}")]
    Permutation(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("group of order {order} exceeds enumeration cap {cap}")]
    GroupTooLarge { order: String, cap: u64 },

    #[error("element orders {0:?} exceed 8 (not tame)")]
    WildOrders(Vec<u64>),

    #[error("relation check failed: {0}")]
    Relation(String),

    #[error("malformed data at line {line}: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("missing data entry {0:?}")]
    MissingEntry(String),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
