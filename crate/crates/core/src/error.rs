use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (bad ids, empty sets, parse failures).
    #[error("input error: {0}")]
    Input(String),

    /// Parse failure with the offending 1-based line number.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The prime field is too small for the requested representation.
    #[error("field too small: modulus {modulus} must exceed {needed}")]
    FieldTooSmall { modulus: u64, needed: u64 },

    /// A dimension or size guard was exceeded.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// An exhaustive routine refused an instance above its configured ceiling.
    #[error("refused: {0}")]
    Refused(String),

    /// A randomized representation degenerated; retry with a fresh seed.
    #[error("degenerate random representation: {0}")]
    Degenerate(String),

    /// Contraction of an edge joining two terminals.
    #[error("refusing to contract edge {0}: both endpoints are terminals")]
    TerminalMerge(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
