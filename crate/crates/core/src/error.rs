use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Inconsistent combinatorial data (rotation system, ids, subsets).
    #[error("structural error: {0}")]
    Structural(String),
    /// Input violates a reduction's admissibility restriction.
    #[error("restriction violated: {0}")]
    Restriction(String),
    /// A geometric constraint on the parameter set does not hold.
    #[error("constraint violated: {0}")]
    Constraint(String),
    /// Gadget synthesis could not realize a required layout.
    #[error("synthesis failed: {0}")]
    Synthesis(String),
    /// A brute-force solver refused to run beyond its caps.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    /// A claimed solution failed verification.
    #[error("solution rejected: {0}")]
    Rejected(String),
    /// A point-location query landed on the arrangement itself.
    #[error("query point lies on the arrangement: {0}")]
    Boundary(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag used in structured diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Structural(_) => "structural",
            Error::Restriction(_) => "restriction",
            Error::Constraint(_) => "constraint",
            Error::Synthesis(_) => "synthesis",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::Rejected(_) => "rejected",
            Error::Boundary(_) => "boundary",
            Error::Parse(_) => "parse",
            Error::Numeric(_) => "numeric",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
