use std::io;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: malformed WAV header: {reason}")]
    MalformedHeader { path: PathBuf, reason: String },
    #[error("{path}: unsupported encoding: {detail}")]
    UnsupportedEncoding { path: PathBuf, detail: String },
    #[error("{path}: {channels} channels; mix down to mono first")]
    UnsupportedChannels { path: PathBuf, channels: u16 },
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("{path}{}: {message}", line.map(|l| format!(":{l}")).unwrap_or_default())]
    Parse {
        path: PathBuf,
        line: Option<u64>,
        message: String,
    },
    #[error("{context}: {source}")]
    Data {
        context: String,
        source: engage_core::Error,
    },
    #[error("{context}: {source}")]
    Runtime {
        context: String,
        source: engage_core::Error,
    },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status: 1 usage, 2 bad input data, 3 failure while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Write { .. } | Error::Runtime { .. } => 3,
            _ => 2,
        }
    }

    pub(crate) fn parse(path: &Path, line: Option<u64>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.to_path_buf(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn read(path: &Path, source: io::Error) -> Self {
        Error::Read {
            path: path.to_path_buf(),
            source,
        }
    }

    pub(crate) fn write(path: &Path, source: io::Error) -> Self {
        Error::Write {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// Attaches context to core errors, classifying them as input or runtime failures.
pub(crate) trait CoreContext<T> {
    fn data(self, context: impl FnOnce() -> String) -> Result<T>;
    fn runtime(self, context: impl FnOnce() -> String) -> Result<T>;
}

impl<T> CoreContext<T> for engage_core::Result<T> {
    fn data(self, context: impl FnOnce() -> String) -> Result<T> {
        self.map_err(|source| Error::Data {
            context: context(),
            source,
        })
    }

    fn runtime(self, context: impl FnOnce() -> String) -> Result<T> {
        self.map_err(|source| Error::Runtime {
            context: context(),
            source,
        })
    }
}
