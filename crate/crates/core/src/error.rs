use thiserror::Error;

/// Errors raised by the algebra engine and the pipeline stages built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisors of zero undefined")]
    DivisorsOfZero,
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("variable sets differ: [{left}] vs [{right}]")]
    VarSetMismatch { left: String, right: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("division requires monic divisor")]
    NonMonicDivisor,
    #[error("zero polynomial not allowed in {0}")]
    ZeroPolynomial(&'static str),
    #[error("polynomial is not univariate in {0:?}")]
    NotUnivariate(String),
    #[error("value is not a root of the polynomial")]
    NotARoot,
    #[error("target degree {target} is below total degree {actual}")]
    DegreeTooSmall { target: u32, actual: u32 },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("line at infinity contained in curve")]
    LineAtInfinityInCurve,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("invalid cuboid parameters p={p}, q={q}: {reason}")]
    InvalidParams {
        p: String,
        q: String,
        reason: &'static str,
    },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
