use thiserror::Error;

/// Errors raised by the library layers.
///
/// Mathematical verdicts (`NonIsolated`, `UnstableTruncation`,
/// `NotQuasiHomogeneous`) are kept apart from usage errors so the CLI can map
/// them onto distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series in different variables cannot be combined ({0} vs {1})")]
    MixedVariable(char, char),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("exterior derivative of a top-degree form")]
    TopDegree,
    #[error("wedge product degree {0} exceeds the ambient dimension {1}")]
    DegreeOverflow(usize, usize),
    #[error("form or polynomial does not match the standard basis")]
    BasisMismatch,
    #[error("input has x-degree {found}, above the certified bound {bound}")]
    DegreeBoundExceeded { bound: u32, found: u32 },
    #[error("polynomial is not singular at the origin: {0}")]
    NotSingular(String),
    #[error("standard monomials do not stabilize below degree {0}; singularity not isolated (or degree bound too small)")]
    NonIsolated(u32),
    #[error("polynomial is not quasi-homogeneous")]
    NotQuasiHomogeneous,
    #[error("lattice is not saturated for this connection")]
    NotSaturated,
    #[error("result changed between truncations: {0}")]
    UnstableTruncation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
