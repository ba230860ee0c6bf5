use crate::error::ReductionError;
use crate::solve::{ansatz, in_kernel, solve_reduction, span_dim, ReductionBasis, Variant};
use calculus::WeightBook;
use lie_core::linalg::null_space;
use lie_core::rational::q;
use lie_core::{SplitData, Q};
use num_traits::Zero;
use poly::{Mono, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Outcome of the homogenization round trip between the plain and the
/// `eps` reduction spaces.
#[derive(Clone, Debug, Default)]
pub struct HomogReport {
    pub elements: usize,
    /// Plain solutions whose homogenization is not an `eps` solution.
    pub forward_failures: Vec<String>,
    /// `eps` solutions whose value at `eps = 1` is not a plain solution.
    pub backward_failures: Vec<String>,
    pub trials: usize,
    pub trial_failures: usize,
    /// `Some(true)` when a perturbed non-solution was rejected.
    pub negative_control: Option<bool>,
    /// Every homogeneous component of every `eps` solution is a solution.
    pub graded: bool,
}

impl HomogReport {
    pub fn passed(&self) -> bool {
        self.forward_failures.is_empty()
            && self.backward_failures.is_empty()
            && self.trial_failures == 0
            && self.negative_control != Some(false)
            && self.graded
    }
}

fn homogenized(f: &Poly) -> Result<Poly, ReductionError> {
    Ok(f.homogenize(f.deg_q())?)
}

/// Checks both directions of the correspondence on the computed bases,
/// `trials` random combinations, a negative control and the grading.
pub fn verify_homogenization(
    s: &SplitData,
    d: u32,
    order: usize,
    trials: usize,
    seed: u64,
    book: &WeightBook,
) -> Result<HomogReport, ReductionError> {
    if s.lambda.iter().any(|l| !l.is_zero()) {
        let shown: Vec<String> = s.lambda.iter().map(lie_core::rational::fmt_q).collect();
        return Err(ReductionError::Affine(shown.join(",")));
    }
    let plain = solve_reduction(s, d, 0, order, Variant::Plain, book)?;
    let eps = solve_reduction(s, d, d, order, Variant::Eps, book)?;
    let mut report = HomogReport {
        elements: plain.elements.len() + eps.elements.len(),
        graded: true,
        trials,
        ..Default::default()
    };
    for f in &plain.elements {
        if !in_kernel(&homogenized(f)?, s, order, &Variant::Eps, book)? {
            report.forward_failures.push(f.to_string());
        }
    }
    for f in &eps.elements {
        if !in_kernel(&f.dehomogenize(), s, order, &Variant::Plain, book)? {
            report.backward_failures.push(f.to_string());
        }
        let mut degrees: Vec<u32> = f.terms().map(|(m, _)| f.mono_deg_q(m) + m.eps).collect();
        degrees.sort_unstable();
        degrees.dedup();
        for t in degrees {
            let part = f.filter(|m| f.mono_deg_q(m) + m.eps == t);
            if !in_kernel(&part, s, order, &Variant::Eps, book)? {
                report.graded = false;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amb = plain.ambient();
    for _ in 0..trials {
        let mut f = Poly::zero(&amb);
        for e in &plain.elements {
            f += &e.scale(&q(rng.gen_range(-5..=5)));
        }
        if !in_kernel(&homogenized(&f)?, s, order, &Variant::Eps, book)? {
            report.trial_failures += 1;
        }
    }
    let outside = ansatz(&amb, d, 0)
        .into_iter()
        .find(|x| x.deg_q() > 0 && !in_kernel(x, s, order, &Variant::Plain, book).unwrap_or(true));
    if let Some(x) = outside {
        let base = plain.elements.first().cloned().unwrap_or_else(|| Poly::one(&amb));
        let bad = &base + &x;
        report.negative_control = Some(!in_kernel(&homogenized(&bad)?, s, order, &Variant::Eps, book)?);
    }
    Ok(report)
}

/// Specialization `J: F' -> sum_k F'_k` on an `eps` basis.
#[derive(Clone, Debug, Default)]
pub struct Eps1Report {
    /// Dimension of the image of `J` added at each filtration degree.
    pub quotient_dims: Vec<usize>,
    /// Plain reduction space, same filtration.
    pub plain_dims: Vec<usize>,
    pub vector_case: bool,
    /// Images of `J` that fail the plain system.
    pub image_failures: usize,
    /// Vector-space case: plain solutions `F` checked for `J(i_eps F) = F`.
    pub witnesses: usize,
    pub witness_failures: usize,
    /// Affine case: solutions with `J(F') = 0`, and how many were written as
    /// `(eps - 1) G` with `G` a solution.
    pub j_kernel: usize,
    pub reconstructed: usize,
}

impl Eps1Report {
    pub fn passed(&self) -> bool {
        self.image_failures == 0 && self.witness_failures == 0 && self.reconstructed == self.j_kernel
    }
}

/// `F' / (eps - 1)` when the division is exact.
fn divide_eps_minus_one(f: &Poly) -> Option<Poly> {
    let top = f.deg_eps();
    let coeffs: Vec<Poly> = (0..=top).map(|k| f.eps_coeff(k)).collect();
    let amb = f.ambient();
    let mut g = vec![Poly::zero(amb); top as usize];
    let mut carry = Poly::zero(amb);
    for k in (1..=top as usize).rev() {
        carry = &carry + &coeffs[k];
        g[k - 1] = carry.clone();
    }
    if !(&carry + &coeffs[0]).is_zero() {
        return None;
    }
    let mut out = Poly::zero(amb);
    for (k, p) in g.iter().enumerate() {
        out += &p.shift_eps(k as u32);
    }
    Some(out)
}

pub fn specialize_eps1(basis: &ReductionBasis, book: &WeightBook) -> Result<Eps1Report, ReductionError> {
    let s = &basis.split;
    let order = basis.order;
    let amb = basis.ambient();
    let vector_case = s.lambda.iter().all(|l| l.is_zero());
    let mut report = Eps1Report {
        vector_case,
        ..Default::default()
    };
    let mut prev = 0;
    for k in 0..=basis.d {
        let images: Vec<Poly> = basis.within(k, basis.n).iter().map(|f| f.dehomogenize()).collect();
        let r = span_dim(&images);
        report.quotient_dims.push(r - prev);
        prev = r;
    }
    for f in &basis.elements {
        if !in_kernel(&f.dehomogenize(), s, order, &Variant::Plain, book)? {
            report.image_failures += 1;
        }
    }
    let plain = solve_reduction(s, basis.d, 0, order, Variant::Plain, book)?;
    report.plain_dims = plain.dims.per_degree();
    if vector_case {
        for f in &plain.elements {
            report.witnesses += 1;
            let h = homogenized(f)?;
            if h.dehomogenize() != *f || !in_kernel(&h, s, order, &Variant::Eps, book)? {
                report.witness_failures += 1;
            }
        }
    }
    // Combinations of the basis killed by J.
    let images: Vec<Poly> = basis.elements.iter().map(|f| f.dehomogenize()).collect();
    let mut rows: BTreeMap<&Mono, Vec<Q>> = BTreeMap::new();
    for (j, p) in images.iter().enumerate() {
        for (m, c) in p.terms() {
            rows.entry(m).or_insert_with(|| vec![Q::zero(); images.len()])[j] = c.clone();
        }
    }
    let rows: Vec<Vec<Q>> = rows.into_values().collect();
    for v in null_space(&rows, images.len()) {
        let mut f = Poly::zero(&amb);
        for (c, e) in v.iter().zip(&basis.elements) {
            f += &e.scale(c);
        }
        report.j_kernel += 1;
        let mut rebuilt = Poly::zero(&amb);
        for k in 1..=f.deg_eps() {
            let fk = f.eps_coeff(k);
            rebuilt += &(&fk.shift_eps(k) - &fk);
        }
        let ok = rebuilt == f
            && match divide_eps_minus_one(&f) {
                Some(g) => in_kernel(&g, s, order, &Variant::Eps, book)?,
                None => false,
            };
        if ok {
            report.reconstructed += 1;
        }
    }
    Ok(report)
}
