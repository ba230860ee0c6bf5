use crate::error::WeightError;
use lie_core::rational::{fmt_q, parse_q, to_f64};
use lie_core::Q;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq)]
pub enum WeightKind {
    Exact {
        value: Q,
        provenance: String,
    },
    Numeric {
        estimate: f64,
        stderr: f64,
        samples: u64,
        seed: u64,
    },
}

/// A weight together with the canonical form of the weighed graph.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightValue {
    pub graph: String,
    pub kind: WeightKind,
}

impl WeightValue {
    pub fn exact(graph: String, value: Q, provenance: &str) -> Self {
        Self {
            graph,
            kind: WeightKind::Exact {
                value,
                provenance: provenance.to_string(),
            },
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, WeightKind::Exact { .. })
    }

    pub fn exact_value(&self) -> Option<&Q> {
        match &self.kind {
            WeightKind::Exact { value, .. } => Some(value),
            WeightKind::Numeric { .. } => None,
        }
    }

    pub fn estimate(&self) -> f64 {
        match &self.kind {
            WeightKind::Exact { value, .. } => to_f64(value),
            WeightKind::Numeric { estimate, .. } => *estimate,
        }
    }

    /// Zero for exact values.
    pub fn stderr(&self) -> f64 {
        match &self.kind {
            WeightKind::Exact { .. } => 0.0,
            WeightKind::Numeric { stderr, .. } => *stderr,
        }
    }
}

impl fmt::Display for WeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            WeightKind::Exact { value, provenance } => write!(
                f,
                "graph={} kind=exact value={} provenance={}",
                self.graph,
                fmt_q(value),
                provenance
            ),
            WeightKind::Numeric {
                estimate,
                stderr,
                samples,
                seed,
            } => write!(
                f,
                "graph={} kind=numeric est={:.6} stderr={:.6} samples={} seed={}",
                self.graph, estimate, stderr, samples, seed
            ),
        }
    }
}

impl FromStr for WeightValue {
    type Err = WeightError;

    /// Parses the record written by `Display`. The graph field holds spaces,
    /// so fields are located by key.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |m: &str| WeightError::Record(m.to_string());
        let rest = s.strip_prefix("graph=").ok_or_else(|| err("missing graph="))?;
        let (graph, tail) = rest
            .split_once(" kind=")
            .ok_or_else(|| err("missing kind="))?;
        let mut fields = std::collections::HashMap::new();
        let mut words = tail.split_whitespace();
        let kind = words.next().ok_or_else(|| err("empty kind"))?;
        for w in words {
            let (k, v) = w.split_once('=').ok_or_else(|| err(w))?;
            fields.insert(k, v);
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| err(k));
        let kind = match kind {
            "exact" => WeightKind::Exact {
                value: parse_q(get("value")?).ok_or_else(|| err("value"))?,
                provenance: get("provenance")?.to_string(),
            },
            "numeric" => WeightKind::Numeric {
                estimate: get("est")?.parse().map_err(|_| err("est"))?,
                stderr: get("stderr")?.parse().map_err(|_| err("stderr"))?,
                samples: get("samples")?.parse().map_err(|_| err("samples"))?,
                seed: get("seed")?.parse().map_err(|_| err("seed"))?,
            },
            other => return Err(err(other)),
        };
        Ok(Self {
            graph: graph.to_string(),
            kind,
        })
    }
}
