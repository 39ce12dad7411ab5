use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("series is not invertible over the integers (constant term {0})")]
    NotInvertible(String),
    #[error("infinite weight: tail height {0} is not a dark-band floor")]
    InfiniteWeight(i64),
    #[error("structural corruption: {0}")]
    Corrupted(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("particle {0} has no permitted move")]
    NoMove(usize),
}

impl Error {
    /// True for errors that indicate an impossible internal structure rather
    /// than bad user input.
    pub fn is_corruption(&self) -> bool {
        matches!(self, Error::Corrupted(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
