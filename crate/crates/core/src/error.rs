use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("budget exceeded in {what} (limit {limit} steps)")]
    BudgetExceeded { what: String, limit: u64 },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("submodule is not contained in the ambient piece")]
    NotContained,
    #[error("Hilbert function did not stabilize on the window (try vmax >= {suggested_vmax}, nmax >= {suggested_nmax})")]
    Unstable {
        suggested_vmax: i64,
        suggested_nmax: i64,
    },
    #[error("normalized coefficient is not an integer")]
    NonIntegerCoefficient,
    #[error("the sheaf is zero; supply an explicit r")]
    EmptySupport,
    #[error("general-element choice failed after {attempts} attempts")]
    GenericityFailure { attempts: usize },
    #[error("no general cut possible: r = 0")]
    InvalidDepth,
    #[error("no base variables (s = 0); the length route needs s >= 1")]
    NoBaseVariables,
    #[error("column set does not have rank {expected}")]
    RankDeficient { expected: usize },
    #[error("relations are not monomial")]
    NotMonomial,
    #[error("{context}: column {column}: {message} (at '{token}')")]
    Parse {
        context: String,
        column: usize,
        token: String,
        message: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
