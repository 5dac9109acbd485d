use thiserror::Error;

/// Errors reported by the exact-arithmetic kernels and checkers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix sizes do not match")]
    SizeMismatch,
    #[error("empty matrix set")]
    EmptyMatrixSet,
    #[error("matrix size {size} is not divisible by block size {p}")]
    NotDivisible { size: usize, p: usize },
    #[error("block index ({i}, {j}) out of range for {n} blocks")]
    BlockIndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("matrix is not diagonal")]
    NotDiagonal,
    #[error("matrix is not hermitian")]
    NotHermitian,
    #[error("matrix size {0} is odd")]
    OddSize(usize),
    #[error("diagonal entries are not pairwise distinct")]
    RepeatedDiagonal,
    #[error("diagonal entries must be real")]
    NonRealDiagonal,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero polynomial")]
    PolyDivisionByZero,
    #[error("word steps do not chain")]
    ChainViolation,
    #[error("word has no steps")]
    EmptyWord,
    #[error("block row {0} out of range")]
    BaseOutOfRange(usize),
    #[error("matrix index {0} out of range")]
    MatrixIndexOutOfRange(usize),
    #[error("interpolation nodes are not distinct")]
    RepeatedInterpolationNode,
    #[error("eigenvalue groups are not aligned to diagonal blocks")]
    MisalignedEigenvalueGroups,
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("invalid witness values: {0}")]
    InvalidWitnessValues(String),
    #[error("family size must be at least 4, got {0}")]
    FamilySizeTooSmall(usize),
    #[error("family parameter must be a nonzero real rational")]
    InvalidFamilyParameter,
    #[error("partition size must be at least 2, got {0}")]
    PartitionSizeTooSmall(usize),
    #[error("empty sample grid")]
    EmptyGrid,
    #[error("invalid scalar literal {0:?}: {1}")]
    ScalarParse(String, String),
    #[error("invalid matrix JSON: {0}")]
    MatrixJson(String),
    #[error("graph node {0} out of range")]
    GraphNodeOutOfRange(usize),
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
