use std::path::PathBuf;

/// Error type shared across the crate.
///
/// Variants map onto the CLI's exit-code classes: usage problems,
/// I/O failures, malformed or inconsistent data, and numerical failures.
#[derive(Debug, thiserror::Error)]
pub enum NtmError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("i/o error{}: {source}", path_suffix(.path))]
    Io {
        #[source]
        source: std::io::Error,
        path: Option<PathBuf>,
    },

    #[error("format error{}{}: {msg}", path_suffix(.path), line_suffix(.line))]
    Format {
        msg: String,
        path: Option<PathBuf>,
        line: Option<usize>,
    },

    #[error("numerical failure: {0}")]
    Numeric(String),
}

fn path_suffix(path: &Option<PathBuf>) -> String {
    match path {
        Some(p) => format!(" in {}", p.display()),
        None => String::new(),
    }
}

fn line_suffix(line: &Option<usize>) -> String {
    match line {
        Some(n) => format!(" at line {n}"),
        None => String::new(),
    }
}

impl NtmError {
    pub fn format(msg: impl Into<String>) -> Self {
        NtmError::Format {
            msg: msg.into(),
            path: None,
            line: None,
        }
    }

    pub fn format_at(msg: impl Into<String>, line: usize) -> Self {
        NtmError::Format {
            msg: msg.into(),
            path: None,
            line: Some(line),
        }
    }

    pub fn io(source: std::io::Error, path: impl Into<PathBuf>) -> Self {
        NtmError::Io {
            source,
            path: Some(path.into()),
        }
    }

    /// Attach a file path to an error that was produced without one.
    pub fn with_path(self, path: impl Into<PathBuf>) -> Self {
        match self {
            NtmError::Io { source, path: None } => NtmError::Io {
                source,
                path: Some(path.into()),
            },
            NtmError::Format {
                msg,
                path: None,
                line,
            } => NtmError::Format {
                msg,
                path: Some(path.into()),
                line,
            },
            other => other,
        }
    }

    /// Process exit code for the CLI: distinct codes per failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            NtmError::Usage(_) => 2,
            NtmError::Io { .. } => 3,
            NtmError::Format { .. } => 4,
            NtmError::Numeric(_) => 5,
        }
    }
}

impl From<std::io::Error> for NtmError {
    fn from(source: std::io::Error) -> Self {
        NtmError::Io { source, path: None }
    }
}

pub type Result<T> = std::result::Result<T, NtmError>;
