use thiserror::Error;

/// Errors raised by diagram handling, bracket and star computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid diagram: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("unknown arc `{0}`")]
    UnknownArc(String),
    #[error("malformed loop: {0}")]
    MalformedLoop(String),
    #[error("point `{point}` is not a crossing between the two loops")]
    NotInterCrossing { point: String },
    #[error("loops are not transversal: arc `{0}` occurs in both factors")]
    NotTransversal(String),
    #[error("series order must be at least {min}, got {got}")]
    Order { min: usize, got: usize },
    #[error("unsupported group for this operation: {0}")]
    UnsupportedGroup(String),
    #[error("missing holonomy for arc `{0}`")]
    MissingArc(String),
    #[error("matrix is not in {group}: {detail}")]
    NotInGroup { group: String, detail: String },
    #[error("singular Gram matrix")]
    SingularGram,
    #[error("lattice needs at least 2 segments, got {0}")]
    LatticeTooSmall(usize),
    #[error("step {0} must be positive and smaller than half a lattice segment")]
    BadStep(String),
    #[error("bad rational `{0}`")]
    BadRational(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
