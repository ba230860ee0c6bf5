use crate::book::{Geometry, WeightBook};
use crate::error::CalcError;
use crate::linform::{LinForm, SymPoly};
use crate::operator::{graph_operator, GraphOperator};
use graphs::{enumerate_reduction_family, pruned_reduction_spec, Graph, DEFAULT_MAX_N};
use lie_core::rational::qr;
use lie_core::{SplitData, Q};
use poly::{Ambient, Poly};
use rayon::prelude::*;
use std::sync::Arc;

/// One graph of `B_i` or `BW_i` with a nonzero operator.
#[derive(Clone, Debug)]
pub struct ReductionTerm {
    pub order: usize,
    pub graph: Graph,
    pub labeled_count: u64,
    pub weight: LinForm,
    pub op: GraphOperator,
}

/// `d = sum_{i <= order} eps^i 2^-i sum_{B_i, BW_i} w_Gamma B_Gamma`, restricted
/// to `x_h = values`.
#[derive(Clone, Debug)]
pub struct ReductionDifferential {
    pub amb: Arc<Ambient>,
    pub order: usize,
    pub restrict: Vec<Q>,
    pub terms: Vec<ReductionTerm>,
}

impl ReductionDifferential {
    /// The differential restricted to `x_h = -character`.
    pub fn new(split: &SplitData, character: &[Q], order: usize) -> Result<Self, CalcError> {
        if order > DEFAULT_MAX_N {
            return Err(CalcError::OrderUnsupported {
                order,
                max: DEFAULT_MAX_N,
            });
        }
        let amb = Ambient::from_split(split);
        let restrict: Vec<Q> = character.iter().map(|c| -c).collect();
        let mut terms = Vec::new();
        for i in 1..=order {
            let fam = enumerate_reduction_family(i, Some(&pruned_reduction_spec(i)))?;
            let reps: Vec<_> = fam.b.iter().chain(&fam.bw).collect();
            let mut built: Vec<ReductionTerm> = reps
                .par_iter()
                .filter_map(|rep| {
                    let op = graph_operator(&rep.graph, &amb, Some(&restrict));
                    if op.is_zero() {
                        return None;
                    }
                    Some(ReductionTerm {
                        order: i,
                        graph: rep.graph.clone(),
                        labeled_count: rep.labeled_count,
                        weight: WeightBook::weight_form(&rep.graph, Geometry::HalfPlane),
                        op,
                    })
                })
                .collect();
            built.retain(|t| !t.weight.is_zero());
            terms.extend(built);
        }
        Ok(Self {
            amb,
            order,
            restrict,
            terms,
        })
    }

    pub fn t(&self) -> usize {
        self.amb.t
    }

    /// Components along `H_1^*, ..., H_t^*`. Without `with_eps` every order
    /// enters with `eps = 1`.
    pub fn apply(&self, f: &Poly, with_eps: bool) -> Result<Vec<SymPoly>, CalcError> {
        if f.has_h_vars() {
            return Err(CalcError::NotInSq(f.to_string()));
        }
        let mut comps = vec![SymPoly::zero(&self.amb); self.t()];
        for term in &self.terms {
            let scale = qr(1, 1 << term.order) * Q::from_integer(term.labeled_count.into());
            let w = term.weight.scale(&scale);
            for (inf, p) in term.op.apply1(f) {
                let Some(j) = inf else { continue };
                let p = if with_eps { p.shift_eps(term.order as u32) } else { p };
                comps[j].add_poly(&p, &w);
            }
        }
        Ok(comps)
    }

    /// Asserts `deg_q(B_Gamma) = 1 - i` on every term (vector-space case).
    pub fn check_degrees(&self) -> Result<(), CalcError> {
        for term in &self.terms {
            let expected = 1 - term.order as i64;
            match term.op.q_degree_shift() {
                Some(s) if s == expected => {}
                found => {
                    return Err(CalcError::DegreeShift {
                        graph: term.graph.to_string(),
                        found: found.unwrap_or(i64::MIN),
                        expected,
                    })
                }
            }
        }
        Ok(())
    }

    /// Canonical forms of the untabulated weights that enter.
    pub fn unknown_weights(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .terms
            .iter()
            .flat_map(|t| t.weight.symbols.keys().cloned())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.weight.is_zero())
    }
}

/// `B_Gamma(f)` for one graph with an edge to `inf`, as its `t` components,
/// restricted to `x_h = -lambda`.
pub fn reduction_op(g: &Graph, f: &Poly, split: &SplitData) -> Result<Vec<Poly>, CalcError> {
    if !g.has_inf() {
        return Err(CalcError::MissingInf);
    }
    if f.has_h_vars() {
        return Err(CalcError::NotInSq(f.to_string()));
    }
    let amb = f.ambient();
    let restrict: Vec<Q> = split.lambda.iter().map(|c| -c).collect();
    let op = graph_operator(g, amb, Some(&restrict));
    let mut out = vec![Poly::zero(amb); split.t];
    for (inf, p) in op.apply1(f) {
        if let Some(j) = inf {
            out[j] = p;
        }
    }
    Ok(out)
}
