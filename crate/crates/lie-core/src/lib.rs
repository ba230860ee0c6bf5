//! Lie algebras given by exact rational structure constants.
//!
//! The basis ordering contract used throughout the workspace: when a split
//! `g = h ⊕ q` is present, the first `t` basis vectors span `h` and the
//! remaining `r = n - t` span `q`.

mod algebra;
mod error;
mod parse;
pub mod linalg;
pub mod rational;
mod split;

pub use algebra::{LieAlgebra, Violation, ViolationKind};
pub use error::{LieError, ParseError};
pub use parse::{parse_algebra, AlgebraFile};
pub use rational::Q;
pub use split::{CentralExtension, SplitData};
