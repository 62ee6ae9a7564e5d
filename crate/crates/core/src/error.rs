use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("negative epsilon degree {degree} survives the limit in {context}")]
    NegativeEpsilonDegree { degree: i32, context: String },
    #[error("negative power of z where a polynomial is required")]
    NegativeZDegree,
    #[error("expression is not polynomial in z: {0}")]
    NotPolynomial(String),
    #[error("cutoff too small: margin {margin} < lowering degree {needed}")]
    CutoffTooSmall { needed: usize, margin: usize },
    #[error("invalid beta: {0}")]
    InvalidBeta(String),
    #[error("margin insufficient: certified region {certified} < checked block {requested}")]
    MarginInsufficient { certified: usize, requested: usize },
    #[error("exponential of a non-nilpotent matrix cannot be certified: {0}")]
    NonNilpotentExponent(String),
    #[error("R-matrix is singular or has a non-unit pivot")]
    SingularR,
    #[error("not completely reducible: {0}")]
    NotCompletelyReducible(String),
    #[error("non-rational eigenvalue: {0}")]
    NonRationalEigenvalue(String),
    #[error("relation failure: {0}")]
    RelationFailure(String),
    #[error("unknown algebra: {0}")]
    UnknownAlgebra(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("unknown scheme: {0}")]
    UnknownScheme(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
