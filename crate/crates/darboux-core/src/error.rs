use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("operator is not Z_{n}-homogeneous: {detail}")]
    NotZNHomogeneous { n: u32, detail: String },
    #[error("kernel functions are linearly dependent")]
    DependentKernel,
    #[error("Wronskian ratio is not rational: {0}")]
    RationalizationFailure(String),
    #[error("h(L) is not right-divisible by P (remainder of order {order})")]
    NonzeroRemainder { order: usize },
    #[error("degenerate exponent data: {0}")]
    DegenerateGamma(String),
    #[error("wave recursion is singular at k = {k}")]
    RecursionSingular { k: usize },
    #[error("truncation K = {k} too small, need at least {required}")]
    MarginExhausted { k: usize, required: usize },
    #[error("identity `{identity}` failed: {detail}")]
    IdentityFailed { identity: String, detail: String },
    #[error("no invariant polynomial of degree <= {max_deg}")]
    NotFound { max_deg: usize },
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
