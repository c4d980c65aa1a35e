use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed complex: {0}")]
    Shape(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("morphisms disagree: {0}")]
    Mismatch(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("not an iota_K-complex: {0}")]
    NotIotaComplex(String),
    #[error("solution space has dimension {dim}, above the cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("invalid staircase: {0}")]
    Staircase(String),
    #[error("torus knot parameters ({0}, {1}) are not coprime positive integers")]
    NotCoprime(i64, i64),
    #[error("invariant computation failed: {0}")]
    Invariant(String),
    #[error("oracle cap m = {0} is too small")]
    OracleCap(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
