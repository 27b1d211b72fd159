use std::path::Path;
use std::process::ExitCode;

use serde_json::json;

/// Failure reported as one JSON object on standard error.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub code: u8,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { kind: "usage", message: message.into(), code: 2 }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self { kind: "invalid-parameter", message: message.into(), code: 2 }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Self { kind: "io", message: format!("{}: {e}", path.display()), code: 4 }
    }

    pub fn internal(e: impl std::fmt::Display) -> Self {
        Self { kind: "internal", message: e.to_string(), code: 5 }
    }

    pub fn report(&self) -> ExitCode {
        eprintln!("{}", json!({ "error": { "kind": self.kind, "message": self.message } }));
        ExitCode::from(self.code)
    }
}

impl From<interlace::Error> for CliError {
    fn from(e: interlace::Error) -> Self {
        use interlace::Error as E;
        match e {
            E::InvalidParameter(_) | E::IndexOutOfRange(_) | E::DegreeTooLarge { .. } => Self::invalid(e.to_string()),
            _ => Self { kind: "numerical", message: e.to_string(), code: 3 },
        }
    }
}
