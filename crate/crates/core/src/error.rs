use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid flow graph: {0}")]
    Validation(String),

    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),

    #[error("vertex {0} is not a splitting vertex")]
    NotASplittingVertex(usize),

    #[error("st-core undefined: no edge lies on a simple source-target path")]
    CoreUndefined,

    #[error("unknown law `{0}`")]
    UnknownLaw(String),
}

impl Error {
    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }
}
