use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{what}: {message}")]
    Parse { what: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid defeater assignment in {path}:\n  {}", violations.join("\n  "))]
    InvalidAssignment { path: String, violations: Vec<String> },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}
