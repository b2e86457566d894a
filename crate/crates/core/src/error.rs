use thiserror::Error;

use crate::classifier::{ModelFileError, TrainError};
use crate::eval::EvalError;
use crate::ingest::TaggedFormatError;
use crate::lexicon::LexiconError;
use crate::projection::ProjectionError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    TaggedFormat(#[from] TaggedFormatError),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
    #[error(transparent)]
    Train(#[from] TrainError),
    #[error(transparent)]
    ModelFile(#[from] ModelFileError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
