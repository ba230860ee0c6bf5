use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error("coincident points in the angle map")]
    Coincident,
    #[error("sample count must be positive")]
    NoSamples,
    #[error("graph has {n2} ground vertices; only 1 or 2 are supported")]
    GroundCount { n2: usize },
    #[error("inadmissible graph: {0}")]
    Graph(#[from] graphs::GraphError),
    #[error("malformed weight record: {0}")]
    Record(String),
}
