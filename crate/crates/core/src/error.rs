use num_bigint::BigUint;
use thiserror::Error;

/// Multidegrees for which the moduli-dimension formula is not asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exclusion {
    K3Surface,
    QuadricHypersurface,
}

impl std::fmt::Display for Exclusion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exclusion::K3Surface => f.write_str("K3 surface"),
            Exclusion::QuadricHypersurface => f.write_str("quadric hypersurface"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the operation's domain (negative binomial argument, `n < 2`, ...).
    #[error("invalid input: {0}")]
    Input(String),
    /// A multidegree failed validation.
    #[error("invalid multidegree: {0}")]
    Validation(String),
    #[error("formula excluded for {0}")]
    Excluded(Exclusion),
    #[error("enumeration size {size} exceeds budget {budget}")]
    Budget { size: BigUint, budget: u64 },
    #[error("oracle refuses {r} degrees (limit {limit})")]
    OracleRefused { r: usize, limit: usize },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Validation(_) | Error::OracleRefused { .. } => 2,
            Error::Excluded(_) => 3,
            Error::Budget { .. } => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
