//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A gate was constructed with bad operands (arity mismatch, repeated
    /// qubit, non-finite angle) or referenced a qubit outside the circuit.
    #[error("invalid gate: {0}")]
    InvalidGate(String),

    /// A benchmark or architecture parameter is out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Text input (QASM, plan file) could not be parsed. `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// No capacity-respecting assignment co-locates every interacting pair.
    #[error("infeasible at slice {slice}: {detail}")]
    Infeasible { slice: usize, detail: String },

    /// A metric is undefined for this program (for example a ratio over an
    /// empty operation set).
    #[error("metric undefined: {0}")]
    Undefined(String),

    /// A trend assertion referenced a metric column that does not exist.
    #[error("unknown metric column: {0}")]
    UnknownColumn(String),

    /// A per-point deadline expired while mapping.
    #[error("deadline exceeded")]
    Timeout,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 0 ok, 2 usage/parse, 3 infeasible, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidGate(_) | Error::InvalidParameter(_) | Error::Parse { .. } => 2,
            Error::Infeasible { .. } => 3,
            Error::Io(_) | Error::Json(_) => 4,
            _ => 1,
        }
    }
}
