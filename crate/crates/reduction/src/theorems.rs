use crate::error::ReductionError;
use crate::homog::specialize_eps1;
use crate::kernel::Certificate;
use crate::report::{fmt_lambda, Verdict};
use crate::solve::{fmt_list, in_kernel, restrict_span, solve_reduction, span_dim, Grid, Variant};
use calculus::WeightBook;
use lie_core::linalg::null_space;
use lie_core::rational::{one, q, qr};
use lie_core::{SplitData, Q};
use num_traits::Zero;
use poly::{monomials_up_to, Ambient, Mono, Poly};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use uea::{duflo_partial, invariants_basis, invariants_basis_with, DufloVariant, Uea, UeaElem};

/// The reduction space against the invariants of `U_eps(g)/U_eps(g) h_{lambda+rho}`.
#[derive(Clone, Debug)]
pub struct Thm51Report {
    pub algebra: String,
    pub lambda: Vec<Q>,
    pub d: u32,
    pub n: u32,
    pub side_red: Grid,
    pub side_inv: Grid,
    pub certificate: Certificate,
    /// Invariance of the images under the map truncated at first order,
    /// modulo `eps^3`; `None` when not run.
    pub map_check: Option<bool>,
}

impl Thm51Report {
    pub fn verdict(&self) -> Verdict {
        Verdict::from_bool(self.side_red == self.side_inv && self.map_check != Some(false))
    }
}

impl fmt::Display for Thm51Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let map = match self.map_check {
            Some(true) => "order1-pass",
            Some(false) => "order1-FAIL",
            None => "skipped",
        };
        write!(
            f,
            "theorem=5.1 algebra={} lambda={} D={} N={} side_red={} side_inv={} grid_red={} grid_inv={} map={} verdict={} backend={}",
            self.algebra,
            fmt_lambda(&self.lambda),
            self.d,
            self.n,
            fmt_list(&self.side_red.per_degree()),
            fmt_list(&self.side_inv.per_degree()),
            self.side_red,
            self.side_inv,
            map,
            self.verdict(),
            self.certificate
        )
    }
}

/// Cumulative invariant dimensions of `U_eps(g)/U_eps(g) h_{lambda+rho}`,
/// the character scaled by `eps`.
fn invariant_grid(s: &SplitData, d: u32, n: u32) -> Grid {
    let ctx = Uea::new(s, true);
    let cells: Vec<(u32, u32)> = (0..=d).flat_map(|k| (0..=n).map(move |m| (k, m))).collect();
    let dims: Vec<usize> = cells
        .par_iter()
        .map(|&(k, m)| invariants_basis(&ctx, k, m).len())
        .collect();
    let cum: Vec<Vec<usize>> = dims.chunks(n as usize + 1).map(|c| c.to_vec()).collect();
    Grid::from_cumulative(&cum)
}

/// `beta(d_{q_eps^{1/2}} F)` is `h`-invariant modulo `eps^3` for every `F`.
fn first_order_map_check(s: &SplitData, elements: &[Poly]) -> bool {
    let ctx = Uea::new(s, true);
    elements.iter().all(|f| {
        let image = UeaElem::symmetrize(&ctx, &duflo_partial(f, s, DufloVariant::Eps)).ideal_reduce();
        (0..s.t).all(|i| {
            image
                .adjoint_action(i)
                .ideal_reduce()
                .terms()
                .all(|(m, _)| m.eps >= 3)
        })
    })
}

/// Compares the graded dimensions of both sides on `deg <= d`, `eps <= n`.
pub fn verify_theorem_5_1(
    algebra: &str,
    s: &SplitData,
    d: u32,
    n: u32,
    order: usize,
    book: &WeightBook,
) -> Result<Thm51Report, ReductionError> {
    let basis = solve_reduction(s, d, n, order, Variant::Eps, book)?;
    let side_inv = invariant_grid(s, d, n);
    let map_check = Some(first_order_map_check(s, &basis.elements));
    Ok(Thm51Report {
        algebra: algebra.to_string(),
        lambda: s.lambda.clone(),
        d,
        n,
        side_red: basis.dims.clone(),
        side_inv,
        certificate: basis.certificate.clone(),
        map_check,
    })
}

fn homogeneous_parts(f: &Poly) -> BTreeMap<u32, Poly> {
    let mut out = BTreeMap::new();
    for (m, _) in f.terms() {
        let i = f.mono_deg_q(m);
        out.entry(i).or_insert_with(|| f.deg_q_part(i));
    }
    out
}

/// `F_(eps) = eps^N sum_{p,i} eps^{-(i+p)} F_p^{(i)}` with `N = max(i+p)+1`.
pub fn t_family_to_eps(family: &[(u32, Poly)], amb: &Arc<Ambient>) -> (Poly, u32) {
    let mut parts = Vec::new();
    for (p, fp) in family {
        for (i, part) in homogeneous_parts(fp) {
            parts.push((i + p, part));
        }
    }
    let big_n = parts.iter().map(|(e, _)| *e).max().map_or(0, |m| m + 1);
    let mut out = Poly::zero(amb);
    for (e, part) in parts {
        out += &part.shift_eps(big_n - e);
    }
    (out, big_n)
}

/// `F_(t) = t^N sum_{k,i} t^{-(i+k)} F_k^{(i)}` with `N = max(i+k)+1`, as
/// `(power of t, coefficient)` pairs.
pub fn eps_to_t_family(f: &Poly) -> (Vec<(u32, Poly)>, u32) {
    let mut parts = Vec::new();
    for k in 0..=f.deg_eps() {
        for (i, part) in homogeneous_parts(&f.eps_coeff(k)) {
            parts.push((i + k, part));
        }
    }
    let big_n = parts.iter().map(|(e, _)| *e).max().map_or(0, |m| m + 1);
    let mut by_power: BTreeMap<u32, Poly> = BTreeMap::new();
    for (e, part) in parts {
        let slot = by_power.entry(big_n - e).or_insert_with(|| Poly::zero(f.ambient()));
        *slot += &part;
    }
    (by_power.into_iter().collect(), big_n)
}

fn eval_family(family: &[(u32, Poly)], t: &Q, amb: &Arc<Ambient>) -> Poly {
    let mut out = Poly::zero(amb);
    for (p, fp) in family {
        out += &fp.scale(&lie_core::rational::pow(t, *p));
    }
    out
}

/// The `t`-values at which families are re-verified.
pub fn sample_ts() -> [Q; 3] {
    [q(1), q(2), qr(-1, 3)]
}

#[derive(Clone, Debug)]
pub struct Thm61Report {
    pub algebra: String,
    pub lambda: Vec<Q>,
    pub d: u32,
    pub cases: usize,
    pub t_checks: usize,
    pub failures: Vec<String>,
}

impl Thm61Report {
    pub fn verdict(&self) -> Verdict {
        Verdict::from_bool(self.failures.is_empty())
    }
}

impl fmt::Display for Thm61Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "theorem=6.1 algebra={} lambda={} D={} cases={} t_checks={} failures={} verdict={}",
            self.algebra,
            fmt_lambda(&self.lambda),
            self.d,
            self.cases,
            self.t_checks,
            self.failures.len(),
            self.verdict()
        )
    }
}

/// Pushes every `eps` solution to a `t`-family and back, re-verifying both
/// systems and the exact monomial factor of the round trip.
pub fn verify_theorem_6_1(
    algebra: &str,
    s: &SplitData,
    d: u32,
    order: usize,
    book: &WeightBook,
) -> Result<Thm61Report, ReductionError> {
    let basis = solve_reduction(s, d, d, order, Variant::Eps, book)?;
    let amb = basis.ambient();
    let mut report = Thm61Report {
        algebra: algebra.to_string(),
        lambda: s.lambda.clone(),
        d,
        cases: 0,
        t_checks: 0,
        failures: Vec::new(),
    };
    for e in &basis.elements {
        if !in_kernel(e, s, order, &Variant::Eps, book)? {
            return Err(ReductionError::FailsSystem {
                component: 0,
                detail: e.to_string(),
            });
        }
        report.cases += 1;
        let (family, n1) = eps_to_t_family(e);
        for t in sample_ts() {
            report.t_checks += 1;
            if !in_kernel(&eval_family(&family, &t, &amb), s, order, &Variant::T(t.clone()), book)? {
                report.failures.push(format!("t-family of {e} fails at t={t}"));
            }
        }
        if eval_family(&family, &one(), &amb) != e.dehomogenize() {
            report.failures.push(format!("F_(t=1) differs from J({e})"));
        }
        let (back, n2) = t_family_to_eps(&family, &amb);
        let same_up_to_eps = if n2 >= n1 {
            back == e.shift_eps(n2 - n1)
        } else {
            *e == back.shift_eps(n1 - n2)
        };
        if !same_up_to_eps {
            report.failures.push(format!("round trip of {e} gave {back}, not eps^{}*F", n2 as i64 - n1 as i64));
        }
        if !in_kernel(&back, s, order, &Variant::Eps, book)? {
            report.failures.push(format!("eps image {back} fails d = 0"));
        }
        if eval_family(&family, &one(), &amb) != back.dehomogenize() {
            report.failures.push(format!("eps image {back} does not specialize to F_(t=1)"));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct Thm68Report {
    pub algebra: String,
    pub lambda: Vec<Q>,
    pub d: u32,
    pub n: u32,
    pub side_t: Vec<usize>,
    pub side_eps1: Vec<usize>,
}

impl Thm68Report {
    pub fn verdict(&self) -> Verdict {
        Verdict::from_bool(self.side_t == self.side_eps1)
    }
}

impl fmt::Display for Thm68Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "theorem=6.8 algebra={} lambda={} D={} N={} side_T1={} side_eps1={} verdict={}",
            self.algebra,
            fmt_lambda(&self.lambda),
            self.d,
            self.n,
            fmt_list(&self.side_t),
            fmt_list(&self.side_eps1),
            self.verdict()
        )
    }
}

/// Invariants of `U(g_T)/U(g_T) h^T_{lambda+rho}` with `T`-degree `<= n`,
/// specialized at `T = 1`, against `J` of the `eps` reduction space.
pub fn verify_theorem_6_8(
    algebra: &str,
    s: &SplitData,
    d: u32,
    n: u32,
    order: usize,
    book: &WeightBook,
) -> Result<Thm68Report, ReductionError> {
    let ext = s.extend_central();
    let ctx = Uea::central(&ext, s);
    let amb = Ambient::from_split(s);
    let base_index = |j: usize| if j < ext.t_index { j } else { j - 1 };
    let ranks: Vec<usize> = (0..=d)
        .into_par_iter()
        .map(|k| {
            let specialized: Vec<Poly> = invariants_basis_with(&ctx, k, n, Some(ext.t_index))
                .iter()
                .map(|e| {
                    let mut p = Poly::zero(&amb);
                    for (m, c) in e.terms() {
                        let mut exps = vec![0; amb.n()];
                        for (j, &x) in m.exps.iter().enumerate() {
                            if j != ext.t_index {
                                exps[base_index(j)] += x;
                            }
                        }
                        p.add_term(Mono { exps, eps: 0 }, c.clone());
                    }
                    p
                })
                .collect();
            span_dim(&specialized)
        })
        .collect();
    let side_t = differences(&ranks);
    let basis = solve_reduction(s, d, n, order, Variant::Eps, book)?;
    let side_eps1 = specialize_eps1(&basis, book)?.quotient_dims;
    Ok(Thm68Report {
        algebra: algebra.to_string(),
        lambda: s.lambda.clone(),
        d,
        n,
        side_t,
        side_eps1,
    })
}

fn differences(cum: &[usize]) -> Vec<usize> {
    let mut prev = 0;
    cum.iter()
        .map(|&r| {
            let v = r.saturating_sub(prev);
            prev = r;
            v
        })
        .collect()
}

/// Truncated commutants on both sides of the center comparison.
#[derive(Clone, Debug)]
pub struct CenterReport {
    pub algebra: String,
    pub lambda: Vec<Q>,
    pub d: u32,
    pub poisson: Vec<usize>,
    pub associative: Vec<usize>,
}

impl CenterReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::from_bool(self.poisson == self.associative)
    }
}

impl fmt::Display for CenterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "centers algebra={} lambda={} D={} poisson={} associative={} kind=truncated-commutant verdict={}",
            self.algebra,
            fmt_lambda(&self.lambda),
            self.d,
            fmt_list(&self.poisson),
            fmt_list(&self.associative),
            self.verdict()
        )
    }
}

/// Null space of the linear conditions `cond(element) = 0` over a list of
/// elements; `cond` returns the condition as a polynomial.
fn solve_linear<T>(elems: &[T], conds: impl Fn(&T) -> Vec<Poly>) -> Vec<Vec<Q>> {
    let mut rows: BTreeMap<(usize, Mono), Vec<Q>> = BTreeMap::new();
    for (j, e) in elems.iter().enumerate() {
        for (c, p) in conds(e).iter().enumerate() {
            for (m, x) in p.terms() {
                rows.entry((c, m.clone())).or_insert_with(|| vec![Q::zero(); elems.len()])[j] = x.clone();
            }
        }
    }
    null_space(&rows.into_values().collect::<Vec<_>>(), elems.len())
}

fn combine_polys(elems: &[Poly], v: &[Q], amb: &Arc<Ambient>) -> Poly {
    let mut out = Poly::zero(amb);
    for (c, e) in v.iter().zip(elems) {
        out += &e.scale(c);
    }
    out
}

fn combine_uea(elems: &[UeaElem], v: &[Q], ctx: &Arc<Uea>) -> UeaElem {
    let mut out = UeaElem::zero(ctx);
    for (c, e) in v.iter().zip(elems) {
        if !c.is_zero() {
            out = out.plus(&e.scale(c));
        }
    }
    out
}

/// Dimensions by degree of the Poisson center of `(S(g)/S(g)h_lambda)^h` and
/// the associative center of `(U(g)/U(g)h_{lambda+rho})^h`, each tested only
/// against invariants of degree `<= d`.
pub fn center_dims(algebra: &str, s: &SplitData, d: u32) -> CenterReport {
    let amb = Ambient::from_split(s);
    let restrict: Vec<Q> = s.lambda.iter().map(|l| -l).collect();
    let qvars: Vec<usize> = (s.t..s.dim()).collect();
    let monos: Vec<Poly> = monomials_up_to(s.dim(), &qvars, d)
        .into_iter()
        .map(|e| Poly::monomial(&amb, Mono { exps: e, eps: 0 }, one()))
        .collect();
    let bracket = |a: &Poly, b: &Poly| a.poisson(b).eval_h(&restrict);
    let inv: Vec<Poly> = solve_linear(&monos, |p| {
        (0..s.t).map(|i| bracket(&Poly::var(&amb, i), p)).collect()
    })
    .iter()
    .map(|v| combine_polys(&monos, v, &amb))
    .collect();
    let poisson_cum: Vec<usize> = (0..=d)
        .map(|k| {
            let low = restrict_span(&inv, |m, a| m.exps[a.t..].iter().sum::<u32>() <= k, &amb);
            solve_linear(&low, |p| inv.iter().map(|b| bracket(p, b)).collect()).len()
        })
        .collect();

    let ctx = Uea::new(s, false);
    let words: Vec<UeaElem> = monomials_up_to(s.dim(), &qvars, d)
        .into_iter()
        .map(|e| UeaElem::word(&ctx, e, 0, one()))
        .collect();
    let to_poly = |e: &UeaElem| e.to_pbw_poly(&amb);
    let ad_conds = |a: &UeaElem| -> Vec<Poly> {
        (0..s.t)
            .map(|i| to_poly(&a.adjoint_action(i).ideal_reduce().set_eps(&one())))
            .collect()
    };
    let assoc_cum: Vec<usize> = (0..=d)
        .map(|k| {
            let low: Vec<UeaElem> = words
                .iter()
                .filter(|w| w.terms().all(|(m, _)| m.exps.iter().sum::<u32>() <= k))
                .cloned()
                .collect();
            let inv_low: Vec<UeaElem> = solve_linear(&low, ad_conds)
                .iter()
                .map(|v| combine_uea(&low, v, &ctx))
                .collect();
            let inv_all: Vec<UeaElem> = solve_linear(&words, ad_conds)
                .iter()
                .map(|v| combine_uea(&words, v, &ctx))
                .collect();
            solve_linear(&inv_low, |a| {
                inv_all
                    .iter()
                    .map(|b| to_poly(&a.mul(b).minus(&b.mul(a)).ideal_reduce().set_eps(&one())))
                    .collect()
            })
            .len()
        })
        .collect();
    CenterReport {
        algebra: algebra.to_string(),
        lambda: s.lambda.clone(),
        d,
        poisson: differences(&poisson_cum),
        associative: differences(&assoc_cum),
    }
}
