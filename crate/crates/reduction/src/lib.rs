//! Bases of the reduction spaces and the checks built on them: the
//! homogenization correspondence, specialization at `eps = 1`, the
//! dimension comparison with the invariants of the quotient of the
//! enveloping algebra, the `t`/`eps` conversions and the central-extension
//! pipeline.

mod error;
mod homog;
mod kernel;
mod report;
mod solve;
mod theorems;
mod wpoly;

pub use error::ReductionError;
pub use homog::{specialize_eps1, verify_homogenization, Eps1Report, HomogReport};
pub use kernel::{Certificate, NUMERIC_GAP};
pub use report::Verdict;
pub use solve::{
    ansatz, apply_differential, differential, fmt_list, in_kernel, restrict_span, solve_reduction,
    span_dim, Grid, ReductionBasis, Variant,
};
pub use theorems::{
    center_dims, eps_to_t_family, t_family_to_eps, verify_theorem_5_1, verify_theorem_6_1,
    verify_theorem_6_8, CenterReport, Thm51Report, Thm61Report, Thm68Report,
};
