use thiserror::Error;

/// Errors shared by every layer of the crate.
///
/// Violations of mathematical laws are not errors: they are reported as
/// structured values by the validating functions. These variants cover
/// malformed input, exhausted budgets and numerical breakdown.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("degree {0} is outside the supported range 1..=4")]
    UnsupportedDegree(usize),

    #[error("not a cocycle: {0}")]
    NotCocycle(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("numerical precision: {0}")]
    Precision(String),

    #[error("sampling too coarse: {0}")]
    Sampling(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

/// Fails with [`Error::Budget`] when `needed` exceeds `limit`.
pub fn check_budget(what: &str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::Budget {
            what: what.to_string(),
            needed,
            limit,
        })
    } else {
        Ok(())
    }
}
