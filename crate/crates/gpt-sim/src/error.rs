//! Error type carrying the process exit code contract: configuration
//! and IO problems exit 2, numeric failures exit 3.

use std::fmt;

#[derive(Debug)]
pub enum SimError {
    Config(String),
    Numeric(String),
    Io(String),
}

pub type Result<T> = core::result::Result<T, SimError>;

impl SimError {
    pub fn exit_code(&self) -> u8 {
        match self {
            SimError::Config(_) | SimError::Io(_) => 2,
            SimError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::Config(msg) => write!(f, "config: {msg}"),
            SimError::Numeric(msg) => write!(f, "numeric: {msg}"),
            SimError::Io(msg) => write!(f, "io: {msg}"),
        }
    }
}

impl std::error::Error for SimError {}

impl From<gpt_core::Error> for SimError {
    fn from(e: gpt_core::Error) -> Self {
        match e {
            gpt_core::Error::Config(msg) => SimError::Config(msg.to_string()),
            gpt_core::Error::Numeric(msg) => SimError::Numeric(msg.to_string()),
        }
    }
}

impl From<serde_json::Error> for SimError {
    fn from(e: serde_json::Error) -> Self {
        SimError::Config(e.to_string())
    }
}

impl From<std::io::Error> for SimError {
    fn from(e: std::io::Error) -> Self {
        SimError::Io(e.to_string())
    }
}

pub(crate) fn config_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(SimError::Config(msg.into()))
}
