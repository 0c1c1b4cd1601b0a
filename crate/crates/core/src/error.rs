use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid partition: {0}")]
    Partition(String),

    /// An argument lies outside the domain of the formula.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    /// Density reached the edge of the position grid.
    #[error("domain escape at step {step}: {detail}")]
    DomainEscape { step: usize, detail: String },

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid environment: {0}")]
    InvalidEnvironment(String),

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    /// Fock-space cutoff too small for the requested amplitude.
    #[error("truncation error: {0}")]
    Truncation(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures produced by the numerics rather than by bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::DomainEscape { .. })
    }
}

pub(crate) fn require(cond: bool, err: impl FnOnce() -> Error) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(err())
    }
}
