use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sign vectors of different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("index {index} out of range for ground set of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown element label {0:?}")]
    UnknownLabel(String),

    #[error("not a matroid polytope: {0}")]
    NotMatroidPolytope(String),

    #[error("not simple: {0}")]
    NotSimple(String),

    #[error("rank-2 face {0:?} has more than two elements (collinear face)")]
    CollinearFace(Vec<String>),

    #[error("{0:?} is not a face of the lattice")]
    NotAFace(Vec<String>),

    #[error("ordering is not a permutation of the ground set: {0}")]
    BadOrdering(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("reconstruction failed: {0}")]
    ReconstructionFailed(String),

    #[error("integer overflow while converting {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Validation failures (as opposed to malformed input or usage mistakes).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotMatroidPolytope(_)
                | Error::NotSimple(_)
                | Error::CollinearFace(_)
                | Error::Degenerate(_)
                | Error::ReconstructionFailed(_)
                | Error::Precondition(_)
        )
    }
}
