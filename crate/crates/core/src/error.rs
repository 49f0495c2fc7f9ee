use thiserror::Error;

use crate::ranking::CandidateId;

/// Failures shared by every solver in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("candidate {0} is not ranked where it is required")]
    UnknownCandidate(CandidateId),

    #[error("candidate {0} appears more than once")]
    DuplicateCandidate(CandidateId),

    #[error("index {index} is out of range (valid: {min}..={max})")]
    IndexOutOfRange { index: usize, min: usize, max: usize },

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("malformed instance: {0}")]
    Malformed(String),

    #[error("instance too large: {what} is {size}, cap is {cap}")]
    TooLarge {
        what: &'static str,
        size: u128,
        cap: u128,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
