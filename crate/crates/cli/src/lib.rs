//! Library side of the `pennyflip` command line tool.

pub mod checks;
pub mod commands;
pub mod config;
pub mod report;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(pennyflip::Error),
    #[error("verification failed: {}", .0.join(", "))]
    Failed(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<pennyflip::Error> for CliError {
    /// Malformed input is a usage error; everything else is a statement
    /// about the mathematics and counts as a domain error.
    fn from(e: pennyflip::Error) -> Self {
        match e {
            pennyflip::Error::Parse(_) | pennyflip::Error::InvalidGame(_) => CliError::Usage(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

/// Escapes text for a Markdown table cell (kets contain `|`).
pub fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}
