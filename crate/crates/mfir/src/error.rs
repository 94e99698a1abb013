//! Error taxonomy for the design pipeline.
//!
//! The distinctions matter to callers: an infeasible *real* relaxation means
//! the frequency specification itself cannot be met at any word length
//! ([`Error::SpecInfeasible`]), while integer infeasibility can often be fixed
//! by raising the word length or the order, and depth infeasibility by
//! raising the adder depth limit.

use thiserror::Error;

/// Errors produced by specification handling, model building, and solving.
#[derive(Debug, Error)]
pub enum Error {
    /// The specification is structurally invalid (bad band edges, wrong order
    /// parity for the filter type, non-positive word length, ...).
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// The continuous relaxation has no solution: no real coefficient vector
    /// satisfies the frequency-domain constraints on the grid.
    #[error("specification infeasible: {0}")]
    SpecInfeasible(String),

    /// Real solutions exist but no integer coefficient vector does under the
    /// current word length and gain bounds.
    #[error("no integer solution: {0}")]
    IntegerInfeasible(String),

    /// No solution exists within the requested adder depth limit.
    #[error("no solution within adder depth {0}")]
    DepthInfeasible(u32),

    /// The adaptive grid refinement loop hit its iteration cap.
    #[error("adaptive loop did not converge within {0} iterations")]
    Diverged(u32),

    /// The time limit was reached before any usable incumbent was found.
    #[error("time limit reached without a solution")]
    TimedOut,

    /// An indicator constraint cannot be linearized because an involved
    /// variable has no finite bound to derive a big-M from.
    #[error("cannot derive big-M for indicator '{0}': unbounded variable")]
    UnboundedBigM(String),

    /// A stage-set enumeration exceeded the configured memory guard.
    #[error("stage set enumeration exceeded {0} triplets")]
    StageSetsTooLarge(usize),

    /// The backend failed or returned something inconsistent.
    #[error("solver: {0}")]
    Solver(String),

    /// An adder graph failed validation (non-odd value, bad topology,
    /// simulation mismatch, value out of range).
    #[error("invalid adder graph: {0}")]
    InvalidGraph(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
