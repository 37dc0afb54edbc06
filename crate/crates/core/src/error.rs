use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{n} is outside the table range [{lo}, {hi})")]
    Range { n: u64, lo: u64, hi: u64 },

    #[error("resource limit exceeded: {what} needs {requested} entries, budget is {budget}")]
    Resource {
        what: &'static str,
        requested: u64,
        budget: u64,
    },

    #[error("configuration error: {0}")]
    Config(String),

    /// Beatty membership could not be decided at the representation's precision.
    #[error("precision error: membership of {m} is ambiguous at the declared precision of alpha; retry with more digits")]
    Precision { m: u64 },

    /// The prime is excluded from elliptic or Chebotarev sets (bad reduction or ramified).
    #[error("prime {p} is excluded: {reason}")]
    ExcludedPrime { p: u64, reason: &'static str },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}
