use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] systole_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot write csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    /// An invariant or lemma check failed.
    Failure = 1,
    /// A work cap was hit; output is partial.
    Budget = 2,
    /// Bad descriptors, flags or files.
    Input = 3,
}

impl Status {
    /// A failed check outranks an exhausted budget.
    pub fn combine(self, other: Status) -> Status {
        match (self, other) {
            (Status::Failure, _) | (_, Status::Failure) => Status::Failure,
            (a, b) => a.max(b),
        }
    }
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Core(systole_core::Error::Invariant(_)) => Status::Failure,
            CliError::Core(systole_core::Error::BudgetExceeded { .. }) => Status::Budget,
            CliError::Io(_) | CliError::Csv(_) => Status::Failure,
            _ => Status::Input,
        }
    }
}
