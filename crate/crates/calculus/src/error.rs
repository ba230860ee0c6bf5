use thiserror::Error;

#[derive(Debug, Error)]
pub enum CalcError {
    #[error("untabulated weights for contributing graphs: {}", .0.join("; "))]
    Untabulated(Vec<String>),
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderUnsupported { order: usize, max: usize },
    #[error("input must lie in S(q): {0}")]
    NotInSq(String),
    #[error("graph has no edge to inf")]
    MissingInf,
    #[error("operator of {graph} has q-degree shift {found}, expected {expected}")]
    DegreeShift {
        graph: String,
        found: i64,
        expected: i64,
    },
    #[error(transparent)]
    Graph(#[from] graphs::GraphError),
    #[error(transparent)]
    Poly(#[from] poly::PolyError),
    #[error(transparent)]
    Weight(#[from] weights::WeightError),
}
