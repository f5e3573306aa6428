use thiserror::Error;

use crate::subset::Subset;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports.
///
/// Variants split into user errors (bad input, out-of-range sizes) and
/// audit failures (a construction produced something that violates an
/// invariant it is supposed to guarantee). See [`Error::is_audit_failure`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length vector is not generic: subset {0} sums to half the total")]
    NonGeneric(Subset),
    #[error("invalid length vector: {0}")]
    InvalidLengths(String),
    #[error("invalid genetic code: {0}")]
    InvalidCode(String),
    #[error("ground set too large: {size} > {max}")]
    GroundSetTooLarge { size: usize, max: usize },
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("not a meet semilattice: {0}")]
    NotMeetSemilattice(String),
    #[error("involution fixes cell {0}")]
    FixedCell(usize),
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
    #[error("complex is not 2-dimensional (dim {0})")]
    Not2d(usize),
    #[error("sphere is not embedded: {0}")]
    SphereNotEmbedded(String),
    #[error("normal projection is not simplicial: {0}")]
    ProjectionNotSimplicial(String),
    #[error("sphere complement is empty")]
    NotFull,
    #[error("chain interference at step {step}: {detail}")]
    ChainInterference { step: usize, detail: String },
    #[error("sphere relocation failed at step {step}: {detail}")]
    SphereRelocationFailed { step: usize, detail: String },
    #[error("unrecognized space: {0}")]
    Unrecognized(String),
    #[error("audit failed: {0}")]
    Audit(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that signal a bug in a construction rather than bad input.
    pub fn is_audit_failure(&self) -> bool {
        matches!(
            self,
            Error::Audit(_)
                | Error::NotMeetSemilattice(_)
                | Error::SphereNotEmbedded(_)
                | Error::ProjectionNotSimplicial(_)
                | Error::FixedCell(_)
        )
    }
}
