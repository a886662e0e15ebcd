use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{a} has no inverse modulo {modulus}")]
    NoInverse { a: String, modulus: String },

    #[error("{value} is not {p}-integral")]
    NotPIntegral { value: String, p: u32 },

    #[error("n = {n} exceeds the direct-summation cap of {cap}")]
    OracleCap { n: String, cap: u64 },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    /// Dedekind sums stay away from every unit of Z_2 and Z_3.
    #[error("no Dedekind sum approximates a {p}-adic unit")]
    NotApproximable { p: u32 },

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("obstruction violated at (m, n) = ({m}, {n}): {detail}")]
    TheoremViolation {
        m: String,
        n: String,
        detail: String,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }
}
