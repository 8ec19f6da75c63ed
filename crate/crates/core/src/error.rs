use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot specialize at q = 0: q is a unit")]
    ZeroSpecialization,
    #[error("matrix dimensions do not chain: {left:?} * {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("elements belong to different algebras: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("element is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("component dimension {dim} exceeds ceiling {ceiling}")]
    CeilingExceeded { dim: u128, ceiling: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree {0} not present in complex")]
    MissingDegree(usize),
}
