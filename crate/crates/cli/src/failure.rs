use std::process::ExitCode;

use serde::Serialize;
use spacelike_core::Error;

/// Why a command did not succeed, mapped onto the process exit code.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: u8,
}

impl Failure {
    pub fn domain(message: impl Into<String>) -> Self {
        Failure { kind: "domain", message: message.into(), exit_code: 2 }
    }

    pub fn io(err: std::io::Error) -> Self {
        Failure { kind: "io", message: err.to_string(), exit_code: 2 }
    }

    pub fn exit(&self) -> ExitCode {
        ExitCode::from(self.exit_code)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (kind, exit_code) = match &e {
            Error::Evanescent { .. } => ("evanescent", 2),
            Error::SingularThreshold { .. } => ("threshold", 2),
            Error::EvanescentBlowup { .. } => ("evanescent_blowup", 3),
            Error::NonFinite => ("non_finite", 3),
            Error::Stability { .. } => ("stability", 2),
            Error::InvalidBoost { .. } => ("invalid_boost", 2),
            Error::InvalidGrid(_) | Error::GridMismatch => ("invalid_grid", 2),
            Error::FrameMismatch { .. } => ("frame_mismatch", 2),
            Error::Domain(_) => ("domain", 2),
        };
        Failure { kind, message: e.to_string(), exit_code }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure { kind: "io", message: e.to_string(), exit_code: 2 }
    }
}
