//! The enveloping-algebra side of the biquantization diagram.

mod duflo;
mod elem;
mod invariants;
mod series;

pub use duflo::{duflo_partial, q_function_expansion, q_sqrt_expansion, DufloVariant};
pub use elem::{IdealRule, Uea, UeaElem};
pub use invariants::{invariants_basis, invariants_basis_with};
pub use series::{log_sinhc_coeffs, Series};
