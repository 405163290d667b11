use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspace is not contained in the given space")]
    SubspaceNotContained,
    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),
    #[error("element is not invertible: augmentation is zero")]
    NotInvertible,
    #[error("inconsistent presentation: quotient kills the unit")]
    InconsistentPresentation,
    #[error("quotient ideal is not stable under the differential")]
    IdealNotDifferentialStable,
    #[error("truncation degree {trunc} too small: {needed}")]
    TruncationTooSmall { trunc: usize, needed: String },
    #[error("order {order} exceeds the supported bound {trunc}")]
    OrderTooLarge { order: usize, trunc: usize },
    #[error("functional is not a valid tangent vector: {0}")]
    InvalidTangentFunctional(String),
    #[error("enumeration oracle too large: dimension {0} exceeds bound {1}")]
    OracleTooLarge(usize, usize),
    #[error("element does not lie in the kernel of d")]
    NotInKernel,
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("structure verification failed: {0}")]
    StructureCheck(String),
}
