use thiserror::Error;

/// Errors produced by the descent algebra library.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input (bad composition, non-prime modulus, mismatched degrees).
    #[error("invalid input: {0}")]
    Input(String),
    /// The request exceeds a desk-scale resource bound.
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    /// Exact integer arithmetic would have overflowed.
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    /// A certification clause failed; the message names the clause.
    #[error("certification failed: {0}")]
    Certification(String),
    /// The brute-force group oracle found an internal inconsistency.
    #[error("oracle failure: {0}")]
    Oracle(String),
    #[error("cache file {path}: {reason}")]
    Cache { path: String, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn check_bound(n: usize, max: usize, what: &str) -> Result<()> {
    if n > max {
        return Err(Error::Resource(format!("{what} is limited to n <= {max}, got n = {n}")));
    }
    Ok(())
}
