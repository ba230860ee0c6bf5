//! Admissible graphs with ordered outgoing edge pairs.
//!
//! Aerial (type I) vertices are 0-based internally and 1-based in the wire
//! format; ground (type II) vertices print as `F1`, `F2`; the dangling sink
//! prints as `inf`.

mod enumerate;
mod error;
mod families;
mod graph;
pub mod oracle;

pub use enumerate::{enumerate, enumerate_q_n2, ClassRep, EnumSpec, InfPolicy};
pub use error::GraphError;
pub use families::{
    classify, enumerate_reduction_family, pruned_reduction_spec, Family, ReductionFamily,
};
pub use graph::{small_loop, Color, Edge, Graph, Special, Target};

/// Default cap on the number of aerial vertices.
pub const DEFAULT_MAX_N: usize = 4;
