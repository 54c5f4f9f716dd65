use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("malformed image header: {0}")]
    MalformedHeader(String),

    #[error("malformed image payload")]
    MalformedPayload,

    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),

    #[error("value outside [0,255]: {0}")]
    ValueOutOfRange(f64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("incompatible index and graph: {0}")]
    Incompatible(String),

    #[error("IDE requires unweighted graph")]
    WeightedDistanceIndex,

    #[error("graph is not connected")]
    Disconnected,

    #[error("contour has an empty interior")]
    EmptyInterior,

    #[error("contour vanished after {iteration} iterations")]
    ContourVanished { iteration: usize },

    #[error("insufficient samples for a dimension fit: {0}")]
    InsufficientSamples(String),

    #[error("png codec error: {0}")]
    Codec(#[from] ::image::ImageError),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
