use thiserror::Error;

use crate::analysis::ModelFit;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty population")]
    EmptyPopulation,

    #[error("genome length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("genome kind mismatch: expected {expected}")]
    GenomeKind { expected: &'static str },

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("position {pos} out of range for length {len}")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown problem id '{0}'")]
    UnknownProblem(String),

    #[error("more workers than islands ({workers} > {islands})")]
    MoreWorkersThanIslands { workers: usize, islands: usize },

    #[error("no single-core baseline")]
    NoBaseline,

    #[error("invalid sample series: {0}")]
    InvalidSeries(String),

    #[error("model has a pole at x = {x}")]
    Pole { x: f64 },

    #[error("{family} fit did not converge (best sse {})", best.sse)]
    NonConvergence {
        family: &'static str,
        best: Box<ModelFit>,
    },

    #[error("statistics: {0}")]
    Statistics(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
