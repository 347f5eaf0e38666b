//! Machine-parseable errors with a stable code enum and fixed exit codes.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ErrorCode {
    InvalidPrime,
    InvalidRange,
    EmptyGrid,
    InvalidFormat,
    InvalidGroupFile,
    Io,
    BudgetExceeded,
    NotAGroup,
    AnnihilatorRank,
    NotFrobenius,
    TorBudgetExceeded,
    ClosedFormMismatch,
    MathError,
    CheckFailed,
}

impl ErrorCode {
    /// 2 for configuration problems, 3 for math-pipeline failures,
    /// 4 for check failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            ErrorCode::InvalidPrime
            | ErrorCode::InvalidRange
            | ErrorCode::EmptyGrid
            | ErrorCode::InvalidFormat
            | ErrorCode::InvalidGroupFile
            | ErrorCode::Io => 2,
            ErrorCode::CheckFailed => 4,
            _ => 3,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ErrorCode::InvalidPrime => "INVALID_PRIME",
            ErrorCode::InvalidRange => "INVALID_RANGE",
            ErrorCode::EmptyGrid => "EMPTY_GRID",
            ErrorCode::InvalidFormat => "INVALID_FORMAT",
            ErrorCode::InvalidGroupFile => "INVALID_GROUP_FILE",
            ErrorCode::Io => "IO",
            ErrorCode::BudgetExceeded => "BUDGET_EXCEEDED",
            ErrorCode::NotAGroup => "NOT_A_GROUP",
            ErrorCode::AnnihilatorRank => "ANNIHILATOR_RANK",
            ErrorCode::NotFrobenius => "NOT_FROBENIUS",
            ErrorCode::TorBudgetExceeded => "TOR_BUDGET_EXCEEDED",
            ErrorCode::ClosedFormMismatch => "CLOSED_FORM_MISMATCH",
            ErrorCode::MathError => "MATH_ERROR",
            ErrorCode::CheckFailed => "CHECK_FAILED",
        }
    }
}

#[derive(Debug, Clone, Error, Serialize)]
#[error("{message}")]
pub struct CliError {
    pub code: ErrorCode,
    pub message: String,
}

impl CliError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    /// The structured error object emitted on stderr.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"error\":{{\"code\":\"{}\",\"message\":{}}}}}",
            self.code.as_str(),
            serde_json::to_string(&self.message).unwrap_or_else(|_| "\"\"".into())
        )
    }
}

impl From<morava::Error> for CliError {
    fn from(e: morava::Error) -> Self {
        let code = match &e {
            morava::Error::NotPrime { .. } => ErrorCode::InvalidPrime,
            morava::Error::NotAGroup { .. } => ErrorCode::NotAGroup,
            morava::Error::AnnihilatorRank { .. } => ErrorCode::AnnihilatorRank,
            morava::Error::NotFrobenius | morava::Error::FrobeniusSearchCap { .. } => {
                ErrorCode::NotFrobenius
            }
            morava::Error::TorBudgetExceeded { .. } => ErrorCode::TorBudgetExceeded,
            morava::Error::ClosedFormMismatch => ErrorCode::ClosedFormMismatch,
            _ => ErrorCode::MathError,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(ErrorCode::Io, e.to_string())
    }
}
