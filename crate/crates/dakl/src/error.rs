use thiserror::Error;

use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Cartan matrix is not of simply-laced finite type: {0}")]
    NotAde(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("coweight has non-positive level {0}; the Tits cone requires level > 0")]
    NotInTitsCone(String),
    #[error("{what} changed when the window was doubled from {window}")]
    StabilizationFailure { what: String, window: Window },
    #[error("element is not realizable in the local Weyl group: {0}")]
    NotRealizable(String),
    #[error("convention mismatch: {0}")]
    ConventionMismatch(String),
    #[error("fixed folding times are not monotone: {0}")]
    InconsistentTimes(String),
    #[error("folding predicate forms disagree: {0}")]
    EquivalenceViolation(String),
    #[error("no solution to the Kazhdan-Lusztig recursion: {0}")]
    NoSolution(String),
    #[error("empty interval: {0}")]
    Empty(String),
    #[error("parse error at position {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },
}

pub type Result<T> = std::result::Result<T, Error>;
