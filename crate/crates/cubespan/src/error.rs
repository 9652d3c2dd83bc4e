use thiserror::Error;

/// Errors surfaced by lattice construction, enumeration and the CLI front end.
#[derive(Debug, Error)]
pub enum Error {
    /// Input data violated a schema or a mathematical precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An enumeration would exceed the configured point cap.
    #[error("resource limit: group order {order} exceeds cap {cap}")]
    ResourceLimit { order: u64, cap: u64 },

    /// The simplex vertices are affinely dependent.
    #[error("degenerate simplex: vertex matrix is singular")]
    DegenerateSimplex,
}

pub type Result<T> = std::result::Result<T, Error>;
