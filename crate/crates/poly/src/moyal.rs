use crate::error::PolyError;
use crate::poly::{Mono, Poly};
use lie_core::rational::{inv_factorial, Q};
use num_traits::Zero;
use std::collections::BTreeMap;

type Tensor = BTreeMap<(Mono, Mono), Q>;

fn add(t: &mut Tensor, k: (Mono, Mono), c: Q) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match t.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// One application of `Σ π^ij ∂_i ⊗ ∂_j` to a tensor of monomial pairs.
fn step(t: &Tensor, pi: &[Vec<Q>]) -> Tensor {
    let mut out = Tensor::new();
    for ((l, r), c) in t {
        for (i, row) in pi.iter().enumerate() {
            let ei = l.exps[i];
            if ei == 0 {
                continue;
            }
            for (j, pij) in row.iter().enumerate() {
                let ej = r.exps[j];
                if ej == 0 || pij.is_zero() {
                    continue;
                }
                let mut l2 = l.clone();
                l2.exps[i] -= 1;
                let mut r2 = r.clone();
                r2.exps[j] -= 1;
                let coef = c * pij * Q::from_integer((ei * ej).into());
                add(&mut out, (l2, r2), coef);
            }
        }
    }
    out
}

/// The Moyal product `Σ_n eps^n/n! Σ Π π^{i_s j_s} ∂_I f ∂_J g`, truncated
/// at `eps^order` (counting only the new eps powers). `None` means
/// `deg f + deg g`, where the series is already exact.
pub fn moyal_product(f: &Poly, g: &Poly, pi: &[Vec<Q>], order: Option<u32>) -> Result<Poly, PolyError> {
    let amb = f.ambient();
    if !crate::Ambient::same(amb, g.ambient()) {
        return Err(PolyError::AmbientMismatch);
    }
    let n = amb.n();
    if pi.len() != n || pi.iter().any(|r| r.len() != n) {
        return Err(PolyError::MatrixShape { expected: n });
    }
    for i in 0..n {
        for j in 0..n {
            if pi[i][j] != -pi[j][i].clone() {
                return Err(PolyError::NotAntisymmetric(i, j));
            }
        }
    }
    let order = order.unwrap_or(f.degree() + g.degree());
    let mut t = Tensor::new();
    for (ml, cl) in f.terms() {
        for (mr, cr) in g.terms() {
            add(&mut t, (ml.clone(), mr.clone()), cl * cr);
        }
    }
    let mut out = Poly::zero(amb);
    for k in 0..=order {
        let w = inv_factorial(k as usize);
        for ((l, r), c) in &t {
            let m = Mono {
                exps: l.exps.iter().zip(&r.exps).map(|(a, b)| a + b).collect(),
                eps: l.eps + r.eps + k,
            };
            out.add_term(m, c * &w);
        }
        if k < order {
            t = step(&t, pi);
            if t.is_empty() {
                break;
            }
        }
    }
    Ok(out)
}
