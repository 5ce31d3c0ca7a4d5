use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("negative exponent in {0:?}; expected a composition in N_0^N")]
    NegativeExponent(Vec<i64>),

    #[error("Laurent polynomial passed to an operator that needs nonnegative exponents")]
    LaurentInput,

    #[error("polynomial contexts differ")]
    ContextMismatch,

    #[error("inadmissible kappa: {0}")]
    InadmissibleKappa(String),

    #[error("edge precondition violated: {0}")]
    EdgePrecondition(String),

    #[error("filling is not column-strict")]
    NotColumnStrict,

    #[error("one-dimensional representation has no minimal vector-valued Jack polynomial")]
    OneDimensional,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("matrix not representable in this scalar type: {0}")]
    NotRepresentable(String),

    #[error("point is not regular: min separation {0:e}")]
    Irregular(f64),

    #[error("point is not in the fundamental chamber")]
    OutsideChamber,

    #[error("integration failed: {0}")]
    Integration(String),

    #[error("series did not converge: {0}")]
    Series(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
