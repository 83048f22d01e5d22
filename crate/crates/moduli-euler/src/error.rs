use thiserror::Error;

/// Errors surfaced by the library; the CLI maps domain errors to exit code 2
/// and resource errors to exit code 3.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unstable type (g, n) = ({0}, {1}); stability requires 2g - 2 + n > 0")]
    Unstable(u32, u32),

    #[error("graph enumeration budget exceeded at (g, n) = ({g}, {n}): dimension {dim} exceeds limit {limit}")]
    BudgetExceeded { g: u32, n: u32, dim: u32, limit: u32 },

    #[error("{0} requires a series with zero constant term")]
    NonzeroConstantTerm(&'static str),

    #[error("domain error: {0}")]
    Domain(String),
}
