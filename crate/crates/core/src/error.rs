//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide error enumeration.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands live in different model dimensions.
    #[error("dimension mismatch: H{0} vs H{1}")]
    DimensionMismatch(usize, usize),

    /// An argument violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The target point lies in the closure of the body, so there is no
    /// closest boundary point in the required sense.
    #[error("target lies in the closure of the body")]
    TargetContained,

    /// The closest-point map is undefined for this boundary target (it is
    /// fixed by the body: a horoball base or a tube axis endpoint).
    #[error("closest point undefined: target belongs to the body's boundary data")]
    UndefinedClosestPoint,

    /// An axis (or translation-axis-dependent quantity) was requested for a
    /// non-loxodromic map.
    #[error("map is not loxodromic")]
    NotLoxodromic,

    /// Orbit enumeration exceeded the configured node budget. Carries the
    /// number of tree nodes visited before giving up (a deterministic count).
    #[error("node budget exceeded after visiting {nodes_visited} nodes")]
    BudgetExceeded { nodes_visited: u64 },

    /// A stabilizer that is neither trivial nor cyclic was supplied.
    #[error("unsupported stabilizer: {0}")]
    UnsupportedStabilizer(String),

    /// Not enough data to perform a fit or estimate.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The short-relator freeness check found a nonempty reduced word
    /// evaluating to plus or minus the identity.
    #[error("freeness check failed: reduced word `{0}` evaluates to ±identity")]
    FreenessViolated(String),

    /// A configuration file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Filesystem error while reading configs or writing reports.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to (validation failures
    /// exit 2, budget exhaustion exits 3).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 3,
            _ => 2,
        }
    }

    /// Short machine-readable kind tag used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(..) => "dimension-mismatch",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::TargetContained => "target-contained",
            Error::UndefinedClosestPoint => "undefined-closest-point",
            Error::NotLoxodromic => "not-loxodromic",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::UnsupportedStabilizer(_) => "unsupported-stabilizer",
            Error::InsufficientData(_) => "insufficient-data",
            Error::FreenessViolated(_) => "freeness-violated",
            Error::Parse(_) => "parse-error",
            Error::Io(_) => "io-error",
        }
    }
}
