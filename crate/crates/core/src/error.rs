use thiserror::Error;

/// Errors surfaced by the library.
///
/// Validation problems of a fan are reported through
/// [`crate::fan::ValidationReport`] rather than this enum; `InvalidFan` only
/// carries structurally malformed input (wrong lengths, bad indices).
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ray index {index} out of range for {count} rays")]
    RayIndexOutOfRange { index: usize, count: usize },

    #[error("invalid fan data: {0}")]
    InvalidFan(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("subset enumeration over {ray_count} rays exceeds the limit of {limit} subsets")]
    SubsetLimitExceeded { ray_count: usize, limit: u64 },

    #[error("arrangement cell enumeration exceeded the limit of {limit} cells")]
    CellLimitExceeded { limit: u64 },

    #[error("pattern polytope for subset {subset:?} is unbounded (non-complete fan or non-tempting subset)")]
    UnboundedPattern { subset: Vec<usize> },

    #[error("strict relations are not allowed in lattice-point enumeration")]
    StrictRelation,

    #[error("direction {0} is not a verified witness")]
    NotAWitness(String),

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}
