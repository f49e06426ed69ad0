use thiserror::Error;

/// Errors reported by the library. Every variant names the operation that
/// rejected its input so the CLI can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: {detail}")]
    Range { op: &'static str, detail: String },

    #[error("{op}: domain error: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: invalid argument: {detail}")]
    Argument { op: &'static str, detail: String },

    #[error("{op}: precondition violated: {detail}")]
    Precondition { op: &'static str, detail: String },

    #[error("{op}: invariant violated: {detail}")]
    Invariant { op: &'static str, detail: String },

    #[error("{op}: resource limit: {detail}")]
    Resource { op: &'static str, detail: String },

    #[error("line {line}: cannot parse {text:?}")]
    Parse { line: usize, text: String },

    #[error("zero table format: {0}")]
    Format(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn range(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Range { op, detail: detail.into() }
    }

    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { op, detail: detail.into() }
    }

    pub(crate) fn invariant(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant { op, detail: detail.into() }
    }

    pub(crate) fn argument(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Argument { op, detail: detail.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
