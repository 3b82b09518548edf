use thiserror::Error;

/// Crate-wide error type.
///
/// The three variants mirror the three failure classes every public entry
/// point can hit: malformed input, an illegal move request, and an exhausted
/// enumeration or memo budget.  Semantic failures (a claim that does not
/// hold, a sequence mismatch) are *not* errors; they are reported in the
/// corresponding report types.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad syntax, out-of-range parameter, size mismatch.
    #[error("invalid input: {0}")]
    Input(String),

    /// A requested move is not legal in the given position.
    #[error("illegal move at vertex {vertex}: {reason}")]
    IllegalMove { vertex: usize, reason: String },

    /// An enumeration or memo budget was exhausted before an answer was found.
    #[error("budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for an [`Error::Input`] with a formatted message.
    pub fn input(msg: impl Into<String>) -> Error {
        Error::Input(msg.into())
    }
}
