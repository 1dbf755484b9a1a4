use std::io;

use thiserror::Error;

use crate::model::NeuronId;

/// Errors raised by the engine, the benchmark environments and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("genome integrity: {0}")]
    Integrity(String),

    #[error("neuron {0} does not exist")]
    UnknownNeuron(NeuronId),

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("episode finished; reset the environment before stepping")]
    EpisodeFinished,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("empty sample")]
    EmptySample,

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
