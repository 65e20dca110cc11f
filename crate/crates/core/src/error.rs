use thiserror::Error;

use crate::channel::Link;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("{0} must not be empty")]
    Empty(&'static str),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (relative asymmetry {asymmetry:e})")]
    NonHermitianInput { asymmetry: f64 },
    #[error("vector norm is zero")]
    ZeroVector,
    #[error("zero distance on link {0}")]
    ZeroDistance(Link),
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    #[error("listening fraction is undefined: inter-transmitter link is zero while the primary link is not")]
    DegenerateDenominator,
    #[error("no power split in [0, 1] (candidates {plus} and {minus})")]
    NoValidRoot { plus: f64, minus: f64 },
    #[error("non-positive logarithm argument {0}")]
    NonPositiveLogArgument(f64),
    #[error("channel realization does not match scenario {0}")]
    ScenarioMismatch(&'static str),
}
