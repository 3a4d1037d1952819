use thiserror::Error;

/// Errors surfaced by parsing, validation and report assembly.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a knot Seifert matrix: det(V - V^T) = {0}, expected +1 or -1")]
    NotAKnotSeifert(String),

    #[error("invalid braid: {0}")]
    InvalidBraid(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("series coefficient t^{exponent} lies outside the window [{lo}, {hi}]")]
    OutsideWindow { exponent: i64, lo: i64, hi: i64 },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
