use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix must have at least one row")]
    EmptyMatrix,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row} contains non-boolean value {value}")]
    NotBoolean { row: usize, value: u8 },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("call pair ({0}, {0}) is degenerate")]
    DegenerateCall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("n = {n} exceeds the enumeration cap of {cap}; raise the cap explicitly")]
    CapExceeded { n: usize, cap: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Instance violates a promise of the problem being solved. These are not
/// "no" answers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MalformedInstance {
    #[error("matrix does not satisfy the maximal column condition")]
    MaximalColumnCondition,
    #[error("{which} is not a member of the gossip monoid")]
    NotMember { which: &'static str },
    #[error("membership of {which} could not be decided within the budget")]
    MembershipUndecided { which: &'static str },
    #[error("certificate for {which} does not multiply to it")]
    BadCertificate { which: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("search budget must be positive")]
    ZeroBudget,
    #[error("malformed instance: {0}")]
    Malformed(#[from] MalformedInstance),
    #[error("k = {k} must lie in 1..={n}")]
    KOutOfRange { k: usize, n: usize },
}

/// Which step of the constructive membership-to-transformation extraction
/// failed. Each variant corresponds to one structural fact the extraction
/// relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractionClaim {
    /// A call between `a ∪ b` and `c ∪ d ∪ e` that is not some `(b_k, e_k)`.
    CrossCallShape,
    /// `(b_k, e_k)` missing or repeated.
    UniqueCopyCall,
    /// A later modification of an `e`-column that is not an `(e_i, e_j)` call
    /// made after both copy calls.
    LateEColumnCall,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("k = {k} must lie in 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("nesting needs dimension at least 2, got {0}")]
    NestingTooSmall(usize),
    #[error("malformed instance: {0}")]
    Malformed(#[from] MalformedInstance),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("constructed factorization does not multiply to the target matrix")]
    FactorizationMismatch,
    #[error("word is not of the block form produced by the reduction: {0}")]
    BlockStructure(String),
    #[error("structural assumption {claim:?} violated: {detail}")]
    Structural {
        claim: ExtractionClaim,
        detail: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
}
