//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by constructors and checked operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("{coarse} is not coarser than {fine}")]
    NotCoarser { fine: String, coarse: String },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{bottom} is not below {top} in the {side} weak order")]
    NotBelow { side: String, bottom: String, top: String },
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("elements {0} and {1} are comparable")]
    Comparable(usize, usize),
    #[error("basis mismatch: {0} vs {1}")]
    BasisMismatch(String, String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("enumeration bound exceeded: size {size} > {max}")]
    TooLarge { size: usize, max: usize },
    #[error("module action has a cycle; no triangular basis order exists")]
    CyclicAction,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
