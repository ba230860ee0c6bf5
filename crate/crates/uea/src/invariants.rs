use crate::elem::{Uea, UeaElem};
use lie_core::linalg::null_space;
use lie_core::rational::Q;
use num_traits::{One, Zero};
use poly::{monomials_up_to, Mono};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Basis of `{a = Σ c Q^α eps^m : |α| ≤ d, m ≤ n, ideal_reduce(ad_{H_i} a) = 0 ∀i}`.
pub fn invariants_basis(ctx: &Arc<Uea>, d: u32, n: u32) -> Vec<UeaElem> {
    invariants_basis_with(ctx, d, n, None)
}

/// Same, with the grading variable replaced by a central letter `T` and
/// `eps` specialized to 1 (the `U(g_T)` computation).
pub fn invariants_basis_with(
    ctx: &Arc<Uea>,
    d: u32,
    n: u32,
    grading_letter: Option<usize>,
) -> Vec<UeaElem> {
    let dim = ctx.n();
    let t = ctx.t();
    let qvars: Vec<usize> = (t..dim).collect();
    let mut ansatz: Vec<UeaElem> = Vec::new();
    for m in 0..=n {
        for alpha in monomials_up_to(dim, &qvars, d) {
            let elem = match grading_letter {
                None => UeaElem::word(ctx, alpha, m, Q::one()),
                Some(l) => {
                    let mut w = alpha;
                    w[l] += m;
                    UeaElem::word(ctx, w, 0, Q::one())
                }
            };
            ansatz.push(elem);
        }
    }
    let specialize = grading_letter.is_some();
    let mut rows_by_mono: BTreeMap<Mono, Vec<Q>> = BTreeMap::new();
    let cols = ansatz.len();
    for (col, a) in ansatz.iter().enumerate() {
        for i in 0..t {
            if Some(i) == grading_letter {
                continue;
            }
            let mut img = a.adjoint_action(i).ideal_reduce();
            if specialize {
                img = img.set_eps(&Q::one());
            }
            for (m, c) in img.terms() {
                // distinguish constraints of different h-generators
                let mut key = m.clone();
                key.exps.push(i as u32);
                rows_by_mono.entry(key).or_insert_with(|| vec![Q::zero(); cols])[col] += c;
            }
        }
    }
    let rows: Vec<Vec<Q>> = rows_by_mono.into_values().collect();
    null_space(&rows, cols)
        .into_iter()
        .map(|v| {
            let mut acc = UeaElem::zero(ctx);
            for (c, a) in v.iter().zip(&ansatz) {
                if !c.is_zero() {
                    acc = acc.plus(&a.scale(c));
                }
            }
            acc
        })
        .collect()
}
