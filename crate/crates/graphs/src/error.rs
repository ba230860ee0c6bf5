use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed graph: {0}")]
    Parse(String),
    #[error("inadmissible graph: {0}")]
    Inadmissible(String),
    #[error("enumeration with n = {n} exceeds the configured bound {max}")]
    TooLarge { n: usize, max: usize },
    #[error("raw search space of {size} edge assignments exceeds the cap {cap}")]
    SearchTooLarge { size: u128, cap: u128 },
}
