use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("weight {0:?} is not dominant")]
    NonDominant(Vec<i64>),
    #[error("no relation for {0}")]
    NoRelation(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("algebra {0} is not of type D")]
    NotTypeD(String),
    #[error("degenerate spectrum: irreps {0:?} share the eigenvalue {1}")]
    DegenerateSpectrum(Vec<Vec<i64>>, String),
    #[error("irrep {0:?} does not occur in the adjoint square")]
    UnknownIrrep(Vec<i64>),
    #[error("no tensor conventions for {0}")]
    UnsupportedFamily(String),
    #[error("unsupported matrix size {0}")]
    UnsupportedSize(usize),
    #[error("tensor {0} is not available")]
    UnresolvedTensor(String),
    #[error("representation dimension {dim} exceeds the degree ceiling {ceiling}")]
    DegreeCeiling { dim: u128, ceiling: u32 },
    #[error("linear system columns and target disagree in shape")]
    InvalidSystem,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
