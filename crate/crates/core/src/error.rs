use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("variable {0} absent from both inputs")]
    MissingVariable(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("line is not contained in the surface")]
    LineNotOnSurface,
    #[error("point is not on the surface")]
    PointNotOnSurface,
    #[error("surface is singular at {0}")]
    SingularPoint(String),
    #[error("non-isolated lines: eliminant vanishes identically")]
    NonIsolated,
    #[error("flecnodal budget violated: {0} lines")]
    BudgetViolated(usize),
    #[error("surface is not invariant under sigma")]
    NotSigmaInvariant,
    #[error("fiber/ramification contradiction: {0}")]
    RamificationContradiction(String),
    #[error("not in Z: {0}")]
    NotInZ(String),
    #[error("enlarge field: {0}")]
    EnlargeField(String),
    #[error("pathological fibre at {0}")]
    Pathological(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
