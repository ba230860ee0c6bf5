//! Weights of admissible graphs.
//!
//! Angle functions are used without the `1/2pi` prefactor of the plain
//! angle map; the single normalization `(2pi)^-(2 n1 + n2 - 2)` is applied
//! once to the integral.

mod angle;
mod error;
mod exact;
mod mc;
mod value;

pub use angle::{angle, AngleVariant};
pub use error::WeightError;
pub use exact::{omega_exact, provenance_note, PROVENANCE};
pub use mc::{form_degree, integrand_at, inf_sign, omega_numeric, McConfig};
pub use value::{WeightKind, WeightValue};

/// Exact table lookup, falling back to Monte Carlo when the graph is not
/// tabulated.
pub fn omega(g: &graphs::Graph, cfg: &McConfig) -> Result<WeightValue, WeightError> {
    match omega_exact(g) {
        Some(w) => Ok(w),
        None => omega_numeric(g, cfg),
    }
}
