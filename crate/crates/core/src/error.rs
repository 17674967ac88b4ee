use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("size mismatch: |mu| = {mu}, |nu| = {nu}")]
    SizeMismatch { mu: u64, nu: u64 },
    #[error("shape mismatch: expected {expected_m}+{expected_n} parts, got {m}+{n}")]
    ShapeMismatch {
        expected_m: usize,
        expected_n: usize,
        m: usize,
        n: usize,
    },
    #[error("input lies on the wall {0}")]
    OnWall(String),
    #[error("energy {size} exceeds the cutoff {cutoff}")]
    CutoffExceeded { size: u64, cutoff: u64 },
    #[error("operator product needs cutoff {required}, but only {cutoff} was given")]
    CutoffTooSmall { required: u64, cutoff: u64 },
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("Bernoulli number index {0} is odd and greater than one")]
    OddIndex(u32),
    #[error("series known through z^{available}, but z^{needed} was requested")]
    IncompatibleTruncation { needed: i64, available: i64 },
    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),
    #[error("input is not in a totally negative chamber")]
    NotTotallyNegative,
    #[error("interpolation system is singular (rank {rank} < {unknowns} unknowns)")]
    SingularSystem { rank: usize, unknowns: usize },
    #[error("interpolation data is inconsistent with a polynomial of the given degree")]
    InconsistentData,
    #[error("point {0} is not in the sample's chamber")]
    ChamberMismatch(String),
    #[error("no sample found: {0}")]
    NoSample(String),
    #[error("chambers are not adjacent across the wall: {0}")]
    NotAdjacent(String),
    #[error("sub-input {0} of the wall-crossing formula lies on a wall")]
    SubInputOnWall(String),
    #[error("wall-crossing parameter delta = {0} is not positive")]
    NonPositiveDelta(i64),
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("invalid wall: {0}")]
    InvalidWall(String),
    #[error("parse error: {0}")]
    Parse(String),
}
