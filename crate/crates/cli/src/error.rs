use std::path::PathBuf;
use thiserror::Error;

/// Every error ends the run with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error("{what} = {value} exceeds the cap {max}")]
    Cap { what: &'static str, value: u64, max: u64 },
    #[error("a numeric run needs an explicit --seed")]
    MissingSeed,
    #[error(transparent)]
    Lie(#[from] lie_core::LieError),
    #[error(transparent)]
    AlgebraParse(#[from] lie_core::ParseError),
    #[error(transparent)]
    Poly(#[from] poly::PolyError),
    #[error(transparent)]
    Graph(#[from] graphs::GraphError),
    #[error(transparent)]
    Weight(#[from] weights::WeightError),
    #[error(transparent)]
    Calc(#[from] calculus::CalcError),
    #[error(transparent)]
    Reduction(#[from] reduction::ReductionError),
}
