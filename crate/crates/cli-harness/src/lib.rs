//! Command implementations behind the `rsp-sim` binary. Each command builds
//! a structured report that renders to JSON or CSV; the thin `main` maps
//! errors onto exit codes (2 for configuration problems, 3 for degenerate
//! scenarios).

pub mod commands;
pub mod report;
pub mod scenario;

/// Errors surfaced to the command line.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    /// Malformed or inconsistent configuration; exit code 2.
    #[error("configuration error: {0}")]
    Config(String),
    /// A scenario whose acceptance event carries no probability; exit 3.
    #[error("degenerate scenario: {0}")]
    Degenerate(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Degenerate(_) => 3,
            HarnessError::Io(_) => 1,
        }
    }
}

impl From<serde_json::Error> for HarnessError {
    fn from(e: serde_json::Error) -> Self {
        HarnessError::Config(e.to_string())
    }
}

impl From<rsp_engine::RspError> for HarnessError {
    fn from(e: rsp_engine::RspError) -> Self {
        match e {
            rsp_engine::RspError::NullOutcome => HarnessError::Degenerate(e.to_string()),
            other => HarnessError::Config(other.to_string()),
        }
    }
}

impl From<photonic_sim::PhotonicError> for HarnessError {
    fn from(e: photonic_sim::PhotonicError) -> Self {
        HarnessError::Config(e.to_string())
    }
}

impl From<singlet_family::SingletError> for HarnessError {
    fn from(e: singlet_family::SingletError) -> Self {
        HarnessError::Config(e.to_string())
    }
}

impl From<qstate_core::QStateError> for HarnessError {
    fn from(e: qstate_core::QStateError) -> Self {
        HarnessError::Config(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
