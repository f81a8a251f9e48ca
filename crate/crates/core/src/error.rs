use thiserror::Error;

/// Errors raised by cut construction, certification and verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QcutError {
    #[error("zero vector where a nonzero direction is required")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is singular (pivot {pivot:e} in column {column})")]
    Singular { column: usize, pivot: f64 },
    #[error("degenerate interval [{pi0}, {pi1}]")]
    DegenerateInterval { pi0: f64, pi1: f64 },
    #[error("zero is not interior to ({pi0}, {pi1})")]
    ZeroNotInterior { pi0: f64, pi1: f64 },
    #[error("slice {value} lies outside the ball of radius {radius}")]
    SliceOutsideBall { value: f64, radius: f64 },
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
    #[error("split direction has a component along the cylinder's free subspace")]
    LinealityComponent,
    #[error("recession condition fails for the aggregation form")]
    RecessionFailure,
    #[error("bad aggregation weights: {0}")]
    BadWeights(String),
    #[error("invalid aggregation form: {0}")]
    BadForm(String),
    #[error("rejection sampling produced no points inside the body")]
    EmptySample,
    #[error("operation requires a 2D slice, got dimension {0}")]
    DimUnsupported(usize),
    #[error("point is not strictly inside the split")]
    NotInside,
    #[error("point violates the cut by {0:e}")]
    CutViolated(f64),
    #[error("point lies outside the body by {0:e}")]
    OutsideBody(f64),
    #[error("no certificate construction for this family: {0}")]
    UnsupportedFamily(String),
    #[error("point is not in the interior of the forbidden set")]
    NotInForbidden,
    #[error("bisection found no sign change within |s| <= {0:e}")]
    BisectionFailure(f64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, QcutError>;
