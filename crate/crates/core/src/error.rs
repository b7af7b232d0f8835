use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("variable sets or prime contexts do not match")]
    Mismatch,
    #[error("element has a term of degree {0}, which is not allowed here")]
    ForbiddenDegree(u32),
    #[error("size guard exceeded: {what} = {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("class sum is not invariant under conjugation")]
    NotSymmetric,
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("unknown claim id: {0}")]
    UnknownClaim(String),
}

pub type Result<T, E = DpError> = std::result::Result<T, E>;

pub(crate) fn cap_check(what: &'static str, value: u64, cap: u64) -> Result<()> {
    if value > cap {
        Err(DpError::CapExceeded { what, value, cap })
    } else {
        Ok(())
    }
}
