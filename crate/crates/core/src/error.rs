use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid matrix shape {rows}x{cols} with {len} entries")]
    InvalidShape { rows: usize, cols: usize, len: usize },

    #[error("{op}: dimension mismatch ({left_rows}x{left_cols} vs {right_rows}x{right_cols})")]
    DimensionMismatch { op: &'static str, left_rows: usize, left_cols: usize, right_rows: usize, right_cols: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("negative entry at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize },

    #[error("vertex {vertex} is a sink (zero row)")]
    Sink { vertex: usize },

    #[error("classes belong to different defining matrices")]
    MatrixMismatch,

    #[error("vector length {found} does not match matrix size {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("A*R != R*B: R is not an intertwiner")]
    NotIntertwiner,

    #[error("vector is not in the eventual image")]
    NotInEventualImage,

    #[error("no power l <= {cap} makes v*A^l integral")]
    NoIntegralityCertificate { cap: u32 },

    #[error("generator images are not x-equivariant for any power <= {max_power}")]
    NotAHomomorphism { max_power: usize },

    #[error("malformed homomorphism data: {0}")]
    MalformedSpec(String),

    #[error("vertex {vertex} out of range for {size} vertices")]
    VertexOutOfRange { vertex: usize, size: usize },

    #[error("vertex {vertex} carries no loop")]
    NoLoopAtVertex { vertex: usize },

    #[error("modulus mismatch ({left} vs {right})")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("vertex sets do not match: {0}")]
    VertexSetMismatch(String),

    #[error("bimodule map mismatch: {0}")]
    MapMismatch(String),

    #[error("relation {relation} fails at the counting level")]
    CountMismatch { relation: &'static str },

    #[error("step {index} does not chain with its predecessor")]
    NonChainingSteps { index: usize },

    #[error("based bimodule would need {count} basis elements")]
    BasisTooLarge { count: String },

    #[error("lag must be positive")]
    ZeroLag,

    #[error("search coefficients overflow machine integers")]
    CoefficientOverflow,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn dims(op: &'static str, left: (usize, usize), right: (usize, usize)) -> Self {
        Error::DimensionMismatch { op, left_rows: left.0, left_cols: left.1, right_rows: right.0, right_cols: right.1 }
    }
}
