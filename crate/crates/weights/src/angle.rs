use crate::error::WeightError;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleVariant {
    /// `(1/2pi) arg((z1 - z2) / (conj(z1) - z2))`.
    Phi,
    /// `arg(z1 - z2) + arg(z1 - conj(z2))`.
    PhiPlus,
    /// `arg(z1 - z2) - arg(z1 - conj(z2))`.
    PhiMinus,
}

/// The angle functions, principal branch of `arg` (cut on the negative
/// real axis).
pub fn angle(z1: Complex64, z2: Complex64, variant: AngleVariant) -> Result<f64, WeightError> {
    if z1 == z2 {
        return Err(WeightError::Coincident);
    }
    let a = (z1 - z2).arg();
    let b = (z1 - z2.conj()).arg();
    Ok(match variant {
        AngleVariant::Phi => ((z1 - z2) / (z1.conj() - z2)).arg() / (2.0 * PI),
        AngleVariant::PhiPlus => a + b,
        AngleVariant::PhiMinus => a - b,
    })
}
