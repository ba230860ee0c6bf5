//! Operators attached to graphs and the truncated series built from them.
//!
//! Every series is truncated at an explicit order. Labelled graphs are
//! summed through their isomorphism classes weighted by `n!/|Aut|`, and each
//! order-`n` sum carries the factor `2^-n` that makes
//! `f * g - g * f = eps {f, g} + O(eps^2)`.

mod book;
mod error;
mod linform;
mod module;
mod operator;
mod reduction;
mod star;

pub use book::{Backend, Geometry, WeightBook};
pub use error::CalcError;
pub use linform::{Evaluated, LinForm, NumPoly, SymPoly};
pub use module::{module_action, t_operator, ModuleAction, Side, TDirection, MAX_MODULE_ORDER};
pub use operator::{graph_operator, OpKey, GraphOperator};
pub use reduction::{reduction_op, ReductionDifferential, ReductionTerm};
pub use star::{star_product, star_symbolic, Flavor};
