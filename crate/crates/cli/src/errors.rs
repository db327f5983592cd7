//! CLI error classification and reporting.
//!
//! Exit codes: 0 success, 1 failed validation/verification, 2 usage,
//! 3 input parse error, 4 domain error, 5 I/O error. Every error prints one
//! machine-readable JSON object on stderr.

use std::process::ExitCode;

use ordseq_core::Error as CoreError;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag combinations or values clap cannot catch.
    Usage(String),
    /// Input files that do not parse.
    Parse(String),
    /// Library preconditions violated by parsed input.
    Domain(String),
    /// Filesystem failures.
    Io(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse(_) => "parse",
            CliError::Domain(_) => "domain",
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Domain(_) => 4,
            CliError::Io(_) => 5,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Domain(m) | CliError::Io(m) => m,
        }
    }

    pub fn report(&self) -> ExitCode {
        let obj = serde_json::json!({
            "error": { "kind": self.kind(), "message": self.message() }
        });
        eprintln!("{obj}");
        ExitCode::from(self.exit_code())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        // Suite names are arguments, so their rejection is a usage error.
        if let CoreError::UnknownSuite(s) = &e {
            return CliError::Usage(format!("unknown verification suite {s:?}"));
        }
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
