use thiserror::Error;

use crate::diagram::Violation;

/// Everything that can go wrong in this crate.
///
/// The variants line up with the process exit codes used by the command-line
/// front end (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid diagram: {}", format_violations(.0))]
    Validation(Vec<Violation>),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("no GHZ witness: {0}")]
    NoWitness(String),

    #[error("rule does not match: {0}")]
    Match(String),

    #[error("soundness failure: {0}")]
    Soundness(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Argument(_) | Error::Dimension(_) | Error::Match(_) => 2,
            Error::Parse(_) | Error::Io(_) => 3,
            Error::Validation(_) => 4,
            Error::Degenerate(_) => 5,
            Error::NoWitness(_) => 6,
            Error::Soundness(_) => 7,
        }
    }
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
