use num_complex::Complex64;
use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants are grouped so that a front end can map them onto a small set of
/// exit codes: everything except [`Error::ConstellationViolation`] is a usage
/// or validation problem.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// The algebraic exponent form divides by `C_k` and takes `|S_k / C_k|^-2`.
    #[error(
        "algebraic form needs C_k != 0 and S_k != 0, but matrix {k} has C = {c}, S = {s}; \
         use the index form instead"
    )]
    SingularMatrix { k: usize, c: Complex64, s: Complex64 },

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error(
        "constellation violation: element {index} of sequence (r={r}, s={s}) is {value}, \
         which is not a point of {constellation}"
    )]
    ConstellationViolation {
        index: usize,
        r: u8,
        s: u8,
        value: Complex64,
        constellation: String,
    },

    #[error("point {value} is not in {constellation}")]
    OffConstellation {
        value: Complex64,
        constellation: String,
    },

    #[error("C_K = {0} lies outside the canonical first quadrant and may duplicate other sequences")]
    NonCanonicalQuadrant(Complex64),

    #[error("refusing to run: {what} needs about {estimate} work items, cap is {cap}")]
    BudgetExceeded {
        what: &'static str,
        estimate: u128,
        cap: u128,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
