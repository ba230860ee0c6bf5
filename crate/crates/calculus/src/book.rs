use crate::error::CalcError;
use crate::linform::{Evaluated, LinForm, SymPoly};
use graphs::{Graph, Special};
use std::collections::BTreeMap;
use std::sync::Mutex;
use weights::{omega_exact, omega_numeric, McConfig, WeightValue};

/// Where a graph's configuration space lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Geometry {
    /// Upper half-plane: star products and the reduction differential.
    HalfPlane,
    /// The corner of the biquantization diagram: module actions. Only the
    /// empty graph and the small loop are known here.
    Corner,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Backend {
    /// Tabulated weights only; anything else must drop out.
    Exact,
    /// Monte Carlo for untabulated half-plane weights.
    Numeric(McConfig),
}

/// Weight lookups with a cache of Monte Carlo runs.
#[derive(Debug)]
pub struct WeightBook {
    pub backend: Backend,
    cache: Mutex<BTreeMap<String, WeightValue>>,
}

const CORNER_PREFIX: &str = "corner:";

impl WeightBook {
    pub fn new(backend: Backend) -> Self {
        Self {
            backend,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn exact() -> Self {
        Self::new(Backend::Exact)
    }

    /// The weight as a linear form: a constant when tabulated, otherwise a
    /// symbol named by the canonical form.
    pub fn weight_form(g: &Graph, geometry: Geometry) -> LinForm {
        let one = lie_core::rational::one();
        match geometry {
            Geometry::HalfPlane => match omega_exact(g) {
                Some(w) => LinForm::constant(w.exact_value().cloned().unwrap_or_default()),
                None => LinForm::symbol(&g.canonical_form(), one),
            },
            Geometry::Corner => {
                if g.n1 == 0 || g.special == Some(Special::SmallLoop) {
                    let w = omega_exact(g).and_then(|w| w.exact_value().cloned());
                    if let Some(w) = w {
                        return LinForm::constant(w);
                    }
                }
                LinForm::symbol(&format!("{CORNER_PREFIX}{}", g.canonical_form()), one)
            }
        }
    }

    /// Monte Carlo value of a half-plane symbol, cached.
    pub fn numeric_weight(&self, name: &str, cfg: &McConfig) -> Result<WeightValue, CalcError> {
        if let Some(w) = self.cache.lock().unwrap().get(name) {
            return Ok(w.clone());
        }
        if name.starts_with(CORNER_PREFIX) {
            return Err(CalcError::Untabulated(vec![name.to_string()]));
        }
        let g: Graph = name.parse()?;
        let w = omega_numeric(&g, cfg)?;
        self.cache.lock().unwrap().insert(name.to_string(), w.clone());
        Ok(w)
    }

    /// Substitutes weights: exact when nothing is left symbolic, numeric
    /// with propagated error under the numeric backend.
    pub fn resolve(&self, s: &SymPoly) -> Result<Evaluated, CalcError> {
        if let Some(p) = s.to_exact() {
            return Ok(Evaluated::Exact(p));
        }
        match &self.backend {
            Backend::Exact => Err(CalcError::Untabulated(s.symbols().into_iter().collect())),
            Backend::Numeric(cfg) => {
                let mut values = BTreeMap::new();
                for name in s.symbols() {
                    let w = self.numeric_weight(&name, cfg)?;
                    values.insert(name, w);
                }
                Ok(Evaluated::Numeric(s.evaluate(&values)))
            }
        }
    }
}
