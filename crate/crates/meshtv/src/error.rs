//! Error type for file handling, configuration, and the CLI pipeline.

use std::fmt;
use std::path::PathBuf;

#[derive(Debug)]
pub enum Error {
    /// Underlying mesh/solver error from the core crate.
    Core(meshtv_core::Error),
    /// Filesystem failure while touching `path`.
    Io { path: PathBuf, source: std::io::Error },
    /// Malformed content in a mesh, mask, or config file.
    Parse { path: PathBuf, line: usize, message: String },
    /// A mesh file parsed but described an invalid surface.
    InvalidMesh { path: PathBuf, source: meshtv_core::Error },
    /// File format not recognized or not supported.
    UnsupportedFormat { path: PathBuf, message: String },
    /// Missing or mutually inconsistent command-line/config options.
    InvalidArguments(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Core(e) => write!(f, "{e}"),
            Error::Io { path, source } => write!(f, "{}: {source}", path.display()),
            Error::Parse { path, line, message } => {
                write!(f, "{}:{line}: {message}", path.display())
            }
            Error::InvalidMesh { path, source } => {
                write!(f, "{}: invalid mesh: {source}", path.display())
            }
            Error::UnsupportedFormat { path, message } => {
                write!(f, "{}: {message}", path.display())
            }
            Error::InvalidArguments(message) => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Core(e) | Error::InvalidMesh { source: e, .. } => Some(e),
            Error::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl From<meshtv_core::Error> for Error {
    fn from(e: meshtv_core::Error) -> Self {
        Error::Core(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn io_err(path: &std::path::Path, source: std::io::Error) -> Error {
    Error::Io { path: path.to_path_buf(), source }
}

pub(crate) fn parse_err(path: &std::path::Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse { path: path.to_path_buf(), line, message: message.into() }
}
