use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("structure contains no ATOM/HETATM records")]
    EmptyStructure,

    #[error("unknown element symbol `{0}`")]
    UnknownElement(String),

    #[error("model: {0}")]
    Model(String),

    #[error("singular geometry: {0}")]
    Singularity(&'static str),

    #[error("unknown marker `{0}`")]
    UnknownMarker(String),

    #[error("scene config: {0}")]
    Config(String),

    #[error("extension {x:.3} Å reaches or exceeds contour length {contour:.3} Å")]
    Overstretched { x: f64, contour: f64 },

    #[error("saxs fit: {0}")]
    Fit(String),

    #[error("command: {0}")]
    Command(String),

    #[error("invalid engine handle {0}")]
    InvalidHandle(u32),

    #[error("wire frame: {0}")]
    Wire(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
