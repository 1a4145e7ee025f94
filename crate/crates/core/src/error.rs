use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed XML at byte {offset}: {message}")]
    Xml { offset: u64, message: String },

    #[error("input is not XML; load it through the plain-text corpus mode instead")]
    NotXml,

    #[error("document {0:?} has no running text")]
    EmptyDocument(String),

    #[error("no language for {0:?}: add it to the TEI header or the manifest")]
    MissingLanguage(String),

    #[error("duplicate document id {0:?}")]
    DuplicateDocument(String),

    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("index {index} out of range for length {len}")]
    OutOfBounds { index: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("need at least {needed} values, found {found}")]
    Size { needed: usize, found: usize },

    #[error("zero-norm vector: {0}")]
    ZeroNorm(String),

    #[error("{name} out of range: {value}")]
    Range { name: &'static str, value: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("non-finite value: {0}")]
    Numeric(String),

    #[error("no embedding for term {0:?}")]
    MissingTerm(String),

    #[error("no contexts found for term {0:?}")]
    NoContexts(String),

    #[error("backend unavailable: {0}")]
    BackendUnavailable(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{item}: {source}")]
    Item {
        item: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format { line, message: message.into() }
    }

    pub(crate) fn item(item: impl Into<String>, source: Error) -> Self {
        Error::Item { item: item.into(), source: Box::new(source) }
    }

    /// Innermost error, looking through stage and item wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } | Error::Item { source, .. } => source.root(),
            other => other,
        }
    }

    /// Process exit code: 2 config, 3 data, 4 backend unavailable.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::Config(_) => 2,
            Error::BackendUnavailable(_) => 4,
            _ => 3,
        }
    }
}

pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| match e {
            e @ Error::Stage { .. } => e,
            e => Error::Stage { stage, source: Box::new(e) },
        })
    }
}
