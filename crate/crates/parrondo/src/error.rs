//! Crate-wide error type and result alias.

use thiserror::Error;

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes reported by this crate.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// A probability was NaN, infinite, or outside `[0, 1]`.
    #[error("invalid probability {0}: must be finite and lie in [0, 1]")]
    InvalidProbability(f64),

    /// A parameter failed validation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A history-dependent game was stepped from a state whose history is unset.
    #[error("history-dependent game requires a seeded two-play history")]
    UnsetHistory,

    /// A Markov chain cannot be analyzed because some transition is certain.
    #[error("degenerate chain: {0}")]
    DegenerateChain(String),

    /// The requested operation is not defined for this game type.
    #[error("unsupported game: {0}")]
    UnsupportedGame(&'static str),

    /// An evaluated mixing path left the unit probability square.
    #[error("path point ({x}, {y}) at t = {t} lies outside the unit square")]
    PathOutOfRange {
        /// Path parameter at which the point was evaluated.
        t: f64,
        /// First coordinate of the offending point.
        x: f64,
        /// Second coordinate of the offending point.
        y: f64,
    },

    /// An output artifact could not be read or written.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
