use thiserror::Error;

/// Errors raised by the library. Search failures are never errors; they are
/// reported through verdicts and optional results.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("order relation contains a cycle through `{0}`")]
    Cycle(String),

    #[error("duplicate identifier `{0}`")]
    Duplicate(String),

    #[error("element set belongs to a different poset")]
    ForeignSet,

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("map is not order preserving: {lower} <= {upper} but f({lower}) = {lower_image} is not <= f({upper}) = {upper_image}")]
    NotMonotone {
        lower: String,
        upper: String,
        lower_image: String,
        upper_image: String,
    },

    #[error("map is undefined on `{0}`")]
    PartialMap(String),

    #[error("not a regular CW face poset with simplex cells: cell `{cell}`: {reason}")]
    NotRegularCw { cell: String, reason: String },

    #[error("invalid cover: part `{part}` {reason}")]
    InvalidCover { part: String, reason: String },

    #[error("search budget must be positive")]
    ZeroBudget,

    #[error("hypothesis not certified at `{element}`: {reason}")]
    NotCertified { element: String, reason: String },

    #[error("certificate replay failed at step {step}: {reason}")]
    Replay { step: usize, reason: String },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn replay(step: usize, reason: impl Into<String>) -> Self {
        Error::Replay {
            step,
            reason: reason.into(),
        }
    }

    /// True for errors caused by malformed user input (as opposed to refusals
    /// and internal failures).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::UnknownElement(_)
                | Error::Cycle(_)
                | Error::Duplicate(_)
                | Error::ForeignSet
                | Error::Parse { .. }
                | Error::NotMonotone { .. }
                | Error::PartialMap(_)
                | Error::NotRegularCw { .. }
                | Error::InvalidCover { .. }
                | Error::ZeroBudget
                | Error::Invalid(_)
                | Error::Io(_)
                | Error::Json(_)
                | Error::Csv(_)
        )
    }
}
