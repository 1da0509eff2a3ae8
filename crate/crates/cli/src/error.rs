use std::fmt;
use std::io;

use hardy_core::Error;

/// Process exit codes.
pub mod exit {
    pub const IO: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const DOMAIN: u8 = 3;
    pub const CAP_EXCEEDED: u8 = 4;
    pub const NOT_FOUND: u8 = 5;
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: exit::PARSE,
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Self {
            code: exit::DOMAIN,
            message: message.into(),
        }
    }

    pub fn cap(message: impl Into<String>) -> Self {
        Self {
            code: exit::CAP_EXCEEDED,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::WitnessNotFound { .. } => exit::NOT_FOUND,
            _ => exit::DOMAIN,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self {
            code: exit::IO,
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self {
            code: exit::IO,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
