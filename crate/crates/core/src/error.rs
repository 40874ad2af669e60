use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("decomposition is not reductive: {0}")]
    NotReductive(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("Lie-Yamaguti axioms violated: {0}")]
    AxiomsViolated(String),

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("matrix realization is not invertible on its image")]
    NonInvertibleRealization,

    #[error("invalid rational `{0}`")]
    InvalidRational(String),
}
