use thiserror::Error;

/// Errors raised by the library.
///
/// Mathematical *failures* (an axiom that does not hold, a map that is not
/// Rota-Baxter) are reported through report values, not through this type.
/// `Error` is reserved for inputs that cannot be processed and for violated
/// preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {context} (expected {expected}, found {found})")]
    DimensionMismatch { context: &'static str, expected: usize, found: usize },

    #[error("not a Lie algebra: {reason} at {tuple:?}")]
    InvalidLieAlgebra { reason: &'static str, tuple: Vec<usize> },

    #[error("not a Lie triple system structure: {0}")]
    InvalidStructure(String),

    #[error("structure is not twilled: {0}")]
    NotTwilled(String),

    #[error("inhomogeneous cochain: {0}")]
    Inhomogeneous(String),

    #[error("not a relative Rota-Baxter operator: failure at {0:?}")]
    NotRotaBaxter(Vec<usize>),

    #[error("invalid matched-pair data: {0}")]
    InvalidMatchedPair(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { context, expected, found })
    }
}
