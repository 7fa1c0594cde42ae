use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("size mismatch: {left} vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },

    #[error("{what}: n = {n} exceeds the cap of {cap}")]
    DimensionCap { what: &'static str, n: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a density matrix: {0}")]
    NotAState(String),

    #[error("invalid Clifford tableau: {0}")]
    InvalidTableau(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("states are not orthogonal (Tr(rho0 rho1) = {0:e})")]
    NonOrthogonal(f64),

    #[error("hashing test needs at least {need} pairs, got {have}")]
    InsufficientPairs { have: usize, need: usize },

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn cap(what: &'static str, n: usize, cap: usize) -> Self {
        Error::DimensionCap { what, n, cap }
    }
}

pub(crate) fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid(format!("{what}: n must be at least 1")));
    }
    if n > cap {
        return Err(Error::cap(what, n, cap));
    }
    Ok(())
}
