//! Process-level error classification.
//!
//! Every failure maps to one of three exit codes: 1 for usage problems
//! (bad invocations and unreadable config files), 2 for validation
//! problems (inputs that were read but are malformed or inconsistent),
//! and 3 for runtime problems (I/O and network failures).

use std::fmt;

use labanimate_core::{
    CodebookError, CompileError, LibraryError, MotionError, ProfileError, SemanticsError,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Runtime(String),
}

impl CliError {
    pub fn usage(message: impl fmt::Display) -> Self {
        CliError::Usage(message.to_string())
    }

    pub fn validation(message: impl fmt::Display) -> Self {
        CliError::Validation(message.to_string())
    }

    pub fn runtime(message: impl fmt::Display) -> Self {
        CliError::Runtime(message.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message)
            | CliError::Validation(message)
            | CliError::Runtime(message) => f.write_str(message),
        }
    }
}

impl std::error::Error for CliError {}

// The core loaders bundle file I/O with parsing; split them back apart so
// a missing file exits 3 while a malformed one exits 2.

impl From<LibraryError> for CliError {
    fn from(error: LibraryError) -> Self {
        match error {
            LibraryError::Io(io) => CliError::runtime(io),
            other => CliError::validation(other),
        }
    }
}

impl From<MotionError> for CliError {
    fn from(error: MotionError) -> Self {
        match error {
            MotionError::Io(io) => CliError::runtime(io),
            other => CliError::validation(other),
        }
    }
}

impl From<CodebookError> for CliError {
    fn from(error: CodebookError) -> Self {
        match error {
            CodebookError::Io(io) => CliError::runtime(io),
            other => CliError::validation(other),
        }
    }
}

impl From<SemanticsError> for CliError {
    fn from(error: SemanticsError) -> Self {
        match error {
            SemanticsError::Io(io) => CliError::runtime(io),
            other => CliError::validation(other),
        }
    }
}

impl From<ProfileError> for CliError {
    fn from(error: ProfileError) -> Self {
        match error {
            ProfileError::Io(io) => CliError::runtime(io),
            other => CliError::validation(other),
        }
    }
}

impl From<CompileError> for CliError {
    fn from(error: CompileError) -> Self {
        CliError::validation(error)
    }
}
