use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("lattice error: {0}")]
    Lattice(String),

    #[error("letter index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// A mathematical invariant failed. Carries a description of what broke.
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("not a Markov triple: ({0}, {1}, {2})")]
    NotMarkov(String, String, String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for failures of mathematical invariants, as opposed to bad input syntax.
    pub fn is_invariant(&self) -> bool {
        matches!(
            self,
            Error::Invariant(_) | Error::NotMarkov(..) | Error::Lattice(_)
        )
    }
}
