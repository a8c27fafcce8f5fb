use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the operation's parameters failed.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Malformed input while parsing a graph file or a family spec.
    /// `pos` is a line number for file formats and a byte offset for
    /// one-line family specs.
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A configured size cap would be exceeded; nothing was computed.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    /// A search budget ran out before the question was decided.
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    /// An invariant that the construction guarantees failed at runtime.
    /// Always a bug; reported loudly instead of being papered over.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
