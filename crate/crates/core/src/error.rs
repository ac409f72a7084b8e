use thiserror::Error;

/// Structural defects: malformed tables, mismatched signatures or bases.
///
/// These are distinct from *law violations*, which are ordinary verdicts
/// (a well-formed algebra may simply fail associativity). Operations that
/// can report both keep the two apart in their signatures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("entry out of range: {0}")]
    Range(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("cospan mismatch: {0}")]
    CospanMismatch(String),
    #[error("not closed under the operations: {0}")]
    NotClosed(String),
    #[error("not a normal subalgebra: {0}")]
    NotNormal(String),
    #[error("not a congruence: {0}")]
    NotCongruence(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("ill-sorted term: {0}")]
    IllSorted(String),
}
