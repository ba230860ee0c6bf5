//! Exact multivariate polynomials over the rationals in the coordinates of a
//! Lie algebra, with an extra formal variable `eps`.

mod ambient;
mod error;
mod moyal;
mod parse;
mod poly;

pub use ambient::Ambient;
pub use error::PolyError;
pub use moyal::moyal_product;
pub use parse::parse_poly;
pub use poly::{monomials_up_to, Mono, Poly};
