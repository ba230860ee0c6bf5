use crate::wpoly::WPoly;
use calculus::{Backend, LinForm, WeightBook};
use lie_core::linalg::null_space;
use lie_core::Q;
use nalgebra::DMatrix;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Relative singular-value gap required before a numeric rank is trusted.
pub const NUMERIC_GAP: f64 = 1e6;

/// How a kernel was certified.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// Every weight involved is tabulated.
    Exact,
    /// Untabulated weights enter, but the kernel lies in the common kernel of
    /// all their coefficient matrices and constant pivots bound the rank.
    ConstantPivots { symbols: usize },
    /// The rank was read off Monte Carlo weights across a singular-value gap.
    Numeric { gap: f64 },
}

impl Certificate {
    fn severity(&self) -> u8 {
        match self {
            Self::Exact => 0,
            Self::ConstantPivots { .. } => 1,
            Self::Numeric { .. } => 2,
        }
    }

    /// The weaker of two certificates.
    pub fn combine(self, other: Certificate) -> Certificate {
        match (&self, &other) {
            (Self::Numeric { gap: a }, Self::Numeric { gap: b }) => Self::Numeric { gap: a.min(*b) },
            _ if other.severity() > self.severity() => other,
            _ => self,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact => write!(f, "exact"),
            Self::ConstantPivots { symbols } => write!(f, "exact-pivots({symbols} untabulated)"),
            Self::Numeric { gap } => write!(f, "numeric(gap={gap:.3e})"),
        }
    }
}

/// A sparse matrix with entries linear in the untabulated weights.
#[derive(Clone, Debug, Default)]
pub(crate) struct SymMatrix {
    pub cols: usize,
    pub rows: Vec<BTreeMap<usize, LinForm>>,
}

impl SymMatrix {
    fn symbols(&self) -> BTreeSet<String> {
        self.rows
            .iter()
            .flat_map(|r| r.values().flat_map(|l| l.symbols.keys().cloned()))
            .collect()
    }

    /// Rows of the constant part and of every symbol's coefficient matrix.
    fn stacked(&self, symbols: &BTreeSet<String>) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for r in &self.rows {
            let mut c = vec![Q::zero(); self.cols];
            for (&j, l) in r {
                c[j] = l.constant.clone();
            }
            out.push(c);
            for s in symbols {
                let mut v = vec![Q::zero(); self.cols];
                let mut any = false;
                for (&j, l) in r {
                    if let Some(x) = l.symbols.get(s) {
                        v[j] = x.clone();
                        any = true;
                    }
                }
                if any {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Rank lower bound valid for every value of the weights: elimination
    /// that only ever pivots on nonzero constants.
    fn constant_pivot_rank(&self, symbols: &BTreeSet<String>) -> usize {
        let index: BTreeMap<String, usize> = symbols.iter().cloned().zip(0..).collect();
        let mut rows: Vec<BTreeMap<usize, WPoly>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(&j, l)| (j, WPoly::from_linform(l, &index)))
                    .filter(|(_, p)| !p.is_zero())
                    .collect()
            })
            .collect();
        let mut rank = 0;
        loop {
            let found = rows.iter().enumerate().find_map(|(i, r)| {
                r.iter()
                    .find_map(|(&j, p)| p.as_constant().map(|c| (i, j, c.clone())))
            });
            let Some((pi, pj, pc)) = found else { break };
            let pivot = rows.swap_remove(pi);
            for r in rows.iter_mut() {
                let Some(f) = r.get(&pj).cloned() else { continue };
                let f = f.scale(&(Q::from_integer(1.into()) / &pc));
                for (j, p) in &pivot {
                    let e = r.entry(*j).or_default();
                    e.sub_mul(&f, p);
                    if e.is_zero() {
                        r.remove(j);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn numeric_singular_values(&self, book: &WeightBook) -> Result<Vec<f64>, String> {
        let Backend::Numeric(cfg) = &book.backend else {
            return Err("untabulated weights under the exact backend".into());
        };
        let mut values = BTreeMap::new();
        for s in self.symbols() {
            let w = book.numeric_weight(&s, cfg).map_err(|e| e.to_string())?;
            values.insert(s, w);
        }
        let mut m = DMatrix::<f64>::zeros(self.rows.len().max(1), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for (&j, l) in r {
                m[(i, j)] = l.evaluate(&values).0;
            }
        }
        let mut sv: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv.resize(self.cols, 0.0);
        Ok(sv)
    }

    /// A basis of the kernel together with its certificate.
    pub fn kernel(&self, book: &WeightBook) -> Result<(Vec<Vec<Q>>, Certificate), String> {
        let symbols = self.symbols();
        let lower = null_space(&self.stacked(&symbols), self.cols);
        if symbols.is_empty() {
            return Ok((lower, Certificate::Exact));
        }
        let needed = self.cols - lower.len();
        if self.constant_pivot_rank(&symbols) >= needed {
            return Ok((
                lower,
                Certificate::ConstantPivots {
                    symbols: symbols.len(),
                },
            ));
        }
        let sv = self.numeric_singular_values(book)?;
        let top = sv.first().copied().unwrap_or(0.0);
        let above = if needed == 0 { f64::INFINITY } else { sv[needed - 1] };
        let below = sv.get(needed).copied().unwrap_or(0.0).max(top * 1e-15);
        let gap = above / below;
        if gap >= NUMERIC_GAP {
            Ok((lower, Certificate::Numeric { gap }))
        } else {
            Err(format!(
                "numeric rank {needed} not separated: gap {gap:.3e} below {NUMERIC_GAP:e}"
            ))
        }
    }
}
