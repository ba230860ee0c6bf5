use calculus::CalcError;
use lie_core::LieError;
use poly::PolyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("order {order} is below D+1 = {needed}: the truncation would not be exact on the ansatz")]
    OrderTooSmall { order: usize, needed: usize },
    #[error("only the vector-space case is covered, but lambda = {0}")]
    Affine(String),
    #[error("rank undecided for degree <= {degree}, eps-order <= {eps}: {reason}")]
    Indeterminate { degree: u32, eps: u32, reason: String },
    #[error("input fails its own system in component {component}: {detail}")]
    FailsSystem { component: usize, detail: String },
    #[error(transparent)]
    Calc(#[from] CalcError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl ReductionError {
    /// Whether the failure comes from missing weights or resource limits
    /// rather than from a computed mismatch.
    pub fn is_resource(&self) -> bool {
        match self {
            Self::Indeterminate { .. } | Self::OrderTooSmall { .. } => true,
            Self::Calc(e) => matches!(
                e,
                CalcError::Untabulated(_) | CalcError::OrderUnsupported { .. } | CalcError::Weight(_)
            ),
            _ => false,
        }
    }
}
