use crate::series::{log_sinhc_coeffs, sqrt_coeff};
use lie_core::rational::inv_factorial;
use lie_core::SplitData;
use poly::{Ambient, Poly};
use std::sync::Arc;

/// Which square root the Duflo-type operator is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DufloVariant {
    /// `q(Y)^{1/2}`.
    Plain,
    /// `q(eps Y)^{1/2}`: each term of degree `k` picks up `eps^k`.
    Eps,
}

fn truncate(p: &Poly, d: u32) -> Poly {
    p.filter(|m| m.degree() <= d)
}

fn trunc_mul(a: &Poly, b: &Poly, d: u32) -> Poly {
    truncate(&(a * b), d)
}

/// `q(Y) = det(sinh(ad Y/2)/(ad Y/2))` truncated to total degree `d`,
/// via `log q = Σ_k a_k Tr(ad_Y^{2k})`.
pub fn q_function_expansion(s: &SplitData, d: u32) -> Poly {
    let amb = Ambient::from_split(s);
    let g = &s.algebra;
    let n = g.dim();
    // (ad_Y)_{kj} = Σ_i y_i c^k_{ij}
    let mut ad = vec![vec![Poly::zero(&amb); n]; n];
    for i in 0..n {
        for j in 0..n {
            for (k, c) in g.bracket(i, j) {
                ad[*k][j] += &Poly::var(&amb, i).scale(c);
            }
        }
    }
    let kmax = (d / 2) as usize;
    let a = log_sinhc_coeffs(kmax.max(1));
    let ad2 = mat_mul(&ad, &ad);
    let mut pw = ad2.clone();
    let mut log_q = Poly::zero(&amb);
    for ak in a.iter().take(kmax) {
        let tr = (0..n).fold(Poly::zero(&amb), |acc, i| &acc + &pw[i][i]);
        log_q += &tr.scale(ak);
        pw = mat_mul(&pw, &ad2);
    }
    exp_truncated(&log_q, d)
}

fn mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = a.len();
    let amb = a[0][0].ambient().clone();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Poly::zero(&amb);
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc += &(&a[i][k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `exp(l)` truncated to degree `d`, for `l` without constant term.
fn exp_truncated(l: &Poly, d: u32) -> Poly {
    let amb = l.ambient();
    let mut out = Poly::one(amb);
    let mut pw = Poly::one(amb);
    for k in 1..=d {
        pw = trunc_mul(&pw, l, d);
        if pw.is_zero() {
            break;
        }
        out += &pw.scale(&inv_factorial(k as usize));
    }
    out
}

/// `q^{1/2}` truncated to degree `d` by the binomial series in `u = q - 1`.
pub fn q_sqrt_expansion(s: &SplitData, d: u32) -> Poly {
    let qf = q_function_expansion(s, d);
    let amb = qf.ambient().clone();
    let u = &qf - &Poly::one(&amb);
    let mut out = Poly::one(&amb);
    let mut pw = Poly::one(&amb);
    for k in 1..=d {
        pw = trunc_mul(&pw, &u, d);
        if pw.is_zero() {
            break;
        }
        out += &pw.scale(&sqrt_coeff(k as usize));
    }
    out
}

/// `∂_{q^{1/2}} f` (or the `q_eps` version): the constant-coefficient
/// operator `x_i ↦ ∂/∂x_i` built from the truncated square root.
pub fn duflo_partial(f: &Poly, s: &SplitData, which: DufloVariant) -> Poly {
    let d = f.degree();
    let mut op = q_sqrt_expansion(s, d);
    if which == DufloVariant::Eps {
        op = op.eps_weighted();
    }
    let amb: &Arc<Ambient> = f.ambient();
    let op = op.with_ambient(amb);
    op.apply_as_operator(f)
}
