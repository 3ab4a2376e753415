use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("action map violates {axiom} at {witness:?}")]
    InvalidAction { axiom: String, witness: Vec<String> },

    #[error("exactness violated: {0}")]
    Exactness(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("field type mismatch: {0}")]
    FieldType(String),

    #[error("degenerate tetrad at node {node} (x = {position:?}, det = {det:e})")]
    DegenerateTetrad { node: usize, position: [f64; 4], det: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("snapshot format error: {0}")]
    Snapshot(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
