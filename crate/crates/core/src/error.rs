use thiserror::Error;

use crate::group::GroupSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong inside the library.
///
/// The CLI maps these onto exit codes with [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("group mismatch: {left} vs {right}")]
    SpecMismatch { left: GroupSpec, right: GroupSpec },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("unsupported group {spec} for {what}")]
    UnsupportedGroup { spec: GroupSpec, what: &'static str },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{edges} edges exceeds the enumeration budget of {budget}; try the lift method")]
    Budget { edges: usize, budget: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid move: {0}")]
    InvalidMove(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("edge {0} is independent of the basis; no circuit")]
    NoCircuit(u32),

    #[error("no reverse move applies at vertex {0}")]
    NoCandidates(u32),

    #[error("certificate invalid at step {step}: {reason}")]
    CertificateInvalid { step: usize, reason: String },

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// 0 ok / 1 negative verdict / 2 usage / 3 budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget { .. } => 3,
            Error::CertificateInvalid { .. } => 1,
            _ => 2,
        }
    }
}
