use thiserror::Error;

/// Broad classification used by the command-line front end to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input: the caller asked for something the theory or the API does not allow.
    Parameter,
    /// An enumeration or table would exceed a configured cap.
    Resource,
    /// A checked identity failed. Always a bug (or a genuine counterexample).
    Invariant,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u64),

    #[error("extension degrees must be at least 1 (got a = {a}, m = {m})")]
    InvalidDegree { a: u32, m: u32 },

    #[error("field of size {size} exceeds the cap of {cap} elements")]
    FieldTooLarge { size: u128, cap: u64 },

    #[error("modulus must be monic of degree {expected} over F_p (got {got:?})")]
    BadModulus { expected: usize, got: Vec<u64> },

    #[error("supplied modulus {0:?} is reducible over F_p")]
    ReducibleModulus(Vec<u64>),

    #[error("twist s = {s} is not coprime to m = {m}")]
    TwistNotCoprime { s: i64, m: u32 },

    #[error("index must be non-negative (got {0})")]
    NegativeIndex(i64),

    #[error("{0} must be nonzero")]
    ZeroElement(&'static str),

    #[error("element does not belong to this field tower (index {index}, field size {size})")]
    MixedTowers { index: u32, size: u32 },

    #[error("norm collision: alpha[{first}] and alpha[{second}] have the same norm {norm}")]
    NormCollision {
        first: usize,
        second: usize,
        norm: String,
    },

    #[error("evaluation points are not F_q-linearly independent")]
    DependentPoints,

    #[error("dimension k = {k} exceeds the code length {n}")]
    DimensionTooLarge { k: usize, n: usize },

    #[error("generator matrix has rank {rank} but {k} rows")]
    RankDeficient { rank: usize, k: usize },

    #[error("code is degenerate: columns of block {block} are F_q-dependent")]
    Degenerate { block: usize },

    #[error("{what}: {needed} exceeds the limit {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },

    #[error("cannot parse element {0:?}")]
    ParseElement(String),

    #[error("{0}")]
    InvalidParameter(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::FieldTooLarge { .. } | Error::CapExceeded { .. } => ErrorKind::Resource,
            Error::InvariantViolation(_) => ErrorKind::Invariant,
            _ => ErrorKind::Parameter,
        }
    }

    pub(crate) fn cap(what: impl Into<String>, needed: u128, cap: u128) -> Self {
        Error::CapExceeded {
            what: what.into(),
            needed,
            cap,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
