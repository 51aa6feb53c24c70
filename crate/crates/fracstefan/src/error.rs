use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or iteration did not converge within its budget.
    #[error("convergence error: {message} (partial={partial}, last_term={last_term})")]
    Convergence {
        message: String,
        partial: f64,
        last_term: f64,
    },

    /// A root bracket did not contain a sign change.
    #[error("bracketing error: {0}")]
    Bracket(String),

    /// The fixed-point solver failed; carries the best iterate seen.
    #[error("solver failure: {message} (best x={best_x}, residual={residual})")]
    Solver {
        message: String,
        best_x: f64,
        residual: f64,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
