use thiserror::Error;

/// Errors raised by the combinatorial routines and parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("size mismatch: composition of {expected} against object of size {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("{0} is not a maximal part index of {1}")]
    NotMaximalPart(usize, String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("{perm} is not a distinguished coset representative for {lambda}")]
    NotDistinguished { perm: String, lambda: String },
    #[error("diagram is not admissible")]
    NotAdmissible,
    #[error("{perm} is not in Z{lambda}")]
    NotInZ { perm: String, lambda: String },
    #[error("node ({0},{1}) is not an inner corner")]
    NotInnerCorner(usize, usize),
    #[error("index {index} out of range 1..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("oracle limited to size {limit}, got {size}")]
    OracleBound { size: usize, limit: usize },
    #[error("composition {lambda} is outside the {family} family")]
    OutsideFamily { lambda: String, family: &'static str },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
