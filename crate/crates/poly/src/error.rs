use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live over different algebras")]
    AmbientMismatch,
    #[error("scaling parameter must be nonzero")]
    ZeroScale,
    #[error("target degree {target} is below deg_q = {deg}")]
    DegreeTooLow { target: u32, deg: u32 },
    #[error("homogenize expects a polynomial in S(q) without eps")]
    NotInSq,
    #[error("Poisson matrix is not antisymmetric at ({0},{1})")]
    NotAntisymmetric(usize, usize),
    #[error("Poisson matrix has wrong size: expected {expected}x{expected}")]
    MatrixShape { expected: usize },
    #[error("cannot parse polynomial at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
