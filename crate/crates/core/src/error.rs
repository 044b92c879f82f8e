use thiserror::Error;

/// Errors raised while configuring or running the model.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParam { field: String, reason: String },

    #[error("config parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown key `{0}`")]
    UnknownKey(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("unknown point set `{0}`")]
    UnknownPointSet(String),

    #[error("stimulus node at ({x}, {y}) lies outside the {width}x{height} lattice")]
    NodeOutOfBounds {
        x: i64,
        y: i64,
        width: usize,
        height: usize,
    },

    #[error("inoculation pattern holds {capacity} free cells but {requested} particles were requested")]
    InsufficientCapacity { capacity: usize, requested: usize },

    #[error("configuration mismatch: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            field: field.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
