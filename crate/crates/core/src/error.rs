use std::path::PathBuf;

use crate::tour::TourViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("invalid tour: {0}")]
    InvalidTour(#[from] TourViolation),

    /// A genotype or decoder precondition was broken. The GA operators never
    /// produce one, so hitting this is a bug in the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("instance has {n} cities, exhaustive search is limited to {max}")]
    TooLarge { n: usize, max: usize },

    /// Cities are reported 1-based.
    #[error("arc solution contains the subtour {}", fmt_cycle(.cycle))]
    Subtour { cycle: Vec<usize> },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("campaign config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

fn fmt_cycle(cycle: &[usize]) -> String {
    let cities: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
    format!("({})", cities.join(","))
}
