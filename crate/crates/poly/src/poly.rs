use crate::ambient::Ambient;
use crate::error::PolyError;
use lie_core::rational::{fmt_q, pow, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Monomial `x^exps · eps^eps`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub exps: Vec<u32>,
    pub eps: u32,
}

impl Mono {
    pub fn one(n: usize) -> Self {
        Self {
            exps: vec![0; n],
            eps: 0,
        }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            eps: self.eps + other.eps,
        }
    }
}

/// Sparse polynomial in `S(g)[eps]` with exact rational coefficients.
///
/// Arithmetic operators panic when the ambients differ; the `checked_*`
/// methods return [`PolyError::AmbientMismatch`] instead.
#[derive(Clone)]
pub struct Poly {
    amb: Arc<Ambient>,
    terms: BTreeMap<Mono, Q>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        Ambient::same(&self.amb, &other.amb) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(amb: &Arc<Ambient>) -> Self {
        Self {
            amb: amb.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(amb: &Arc<Ambient>, c: Q) -> Self {
        let mut p = Self::zero(amb);
        p.add_term(Mono::one(amb.n()), c);
        p
    }

    pub fn one(amb: &Arc<Ambient>) -> Self {
        Self::constant(amb, Q::one())
    }

    /// The coordinate `x_i`.
    pub fn var(amb: &Arc<Ambient>, i: usize) -> Self {
        let mut m = Mono::one(amb.n());
        m.exps[i] = 1;
        Self::monomial(amb, m, Q::one())
    }

    pub fn eps(amb: &Arc<Ambient>) -> Self {
        Self::eps_pow(amb, 1)
    }

    pub fn eps_pow(amb: &Arc<Ambient>, k: u32) -> Self {
        let mut m = Mono::one(amb.n());
        m.eps = k;
        Self::monomial(amb, m, Q::one())
    }

    pub fn monomial(amb: &Arc<Ambient>, m: Mono, c: Q) -> Self {
        assert_eq!(m.exps.len(), amb.n());
        let mut p = Self::zero(amb);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(amb: &Arc<Ambient>, terms: impl IntoIterator<Item = (Mono, Q)>) -> Self {
        let mut p = Self::zero(amb);
        for (m, c) in terms {
            assert_eq!(m.exps.len(), amb.n());
            p.add_term(m, c);
        }
        p
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.amb
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Mono, Q> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Constant term (no coordinates, no eps).
    pub fn constant_term(&self) -> Q {
        self.coeff(&Mono::one(self.amb.n()))
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Poly) -> Result<(), PolyError> {
        if Ambient::same(&self.amb, &other.amb) {
            Ok(())
        } else {
            Err(PolyError::AmbientMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        let mut out = Poly::zero(&self.amb);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.amb);
        }
        Poly {
            amb: self.amb.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.amb);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by `eps^k`.
    pub fn shift_eps(&self, k: u32) -> Poly {
        self.map_monos(|m| Mono {
            exps: m.exps.clone(),
            eps: m.eps + k,
        })
    }

    fn map_monos(&self, f: impl Fn(&Mono) -> Mono) -> Poly {
        let mut out = Poly::zero(&self.amb);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// `∂/∂x_i`.
    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.amb);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.exps[i] -= 1;
            out.add_term(m2, c * Q::from_integer(e.into()));
        }
        out
    }

    /// Applies `∂^α` for the exponent vector `alpha`.
    pub fn deriv_multi(&self, alpha: &[u32]) -> Poly {
        let mut out = Poly::zero(&self.amb);
        'terms: for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let mut coef = c.clone();
            for (i, &a) in alpha.iter().enumerate() {
                if m.exps[i] < a {
                    continue 'terms;
                }
                for s in 0..a {
                    coef *= Q::from_integer((m.exps[i] - s).into());
                }
                m2.exps[i] -= a;
            }
            out.add_term(m2, coef);
        }
        out
    }

    /// Sum of exponents over q-coordinates, maximized over terms (0 for zero).
    pub fn deg_q(&self) -> u32 {
        let t = self.amb.t;
        self.terms
            .keys()
            .map(|m| m.exps[t..].iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Maximal eps-exponent.
    pub fn deg_eps(&self) -> u32 {
        self.terms.keys().map(|m| m.eps).max().unwrap_or(0)
    }

    /// Maximal total coordinate degree (eps not counted).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn mono_deg_q(&self, m: &Mono) -> u32 {
        m.exps[self.amb.t..].iter().sum()
    }

    /// True when some term involves an h-coordinate.
    pub fn has_h_vars(&self) -> bool {
        let t = self.amb.t;
        self.terms.keys().any(|m| m.exps[..t].iter().any(|&e| e > 0))
    }

    pub fn has_eps(&self) -> bool {
        self.terms.keys().any(|m| m.eps > 0)
    }

    /// True when every term has `deg_q + deg_eps == d`.
    pub fn is_homogeneous_q_eps(&self, d: u32) -> bool {
        self.terms
            .keys()
            .all(|m| self.mono_deg_q(m) + m.eps == d)
    }

    /// Terms with `deg_q == k`.
    pub fn deg_q_part(&self, k: u32) -> Poly {
        self.filter(|m| self.mono_deg_q(m) == k)
    }

    /// Coefficient of `eps^k`, as an eps-free polynomial.
    pub fn eps_coeff(&self, k: u32) -> Poly {
        let mut out = Poly::zero(&self.amb);
        for (m, c) in &self.terms {
            if m.eps == k {
                out.add_term(
                    Mono {
                        exps: m.exps.clone(),
                        eps: 0,
                    },
                    c.clone(),
                );
            }
        }
        out
    }

    /// Drops all terms with eps-exponent above `k`.
    pub fn truncate_eps(&self, k: u32) -> Poly {
        self.filter(|m| m.eps <= k)
    }

    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> Poly {
        Poly {
            amb: self.amb.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `x_i <- value`.
    pub fn eval_coord(&self, i: usize, value: &Q) -> Poly {
        let mut out = Poly::zero(&self.amb);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2.exps[i];
            m2.exps[i] = 0;
            out.add_term(m2, c * pow(value, e));
        }
        out
    }

    /// Substitutes the h-coordinates `x_i <- values[i]`, `i < t`.
    pub fn eval_h(&self, values: &[Q]) -> Poly {
        assert_eq!(values.len(), self.amb.t);
        let mut p = self.clone();
        for (i, v) in values.iter().enumerate() {
            p = p.eval_coord(i, v);
        }
        p
    }

    /// Substitutes `eps <- value`.
    pub fn set_eps(&self, value: &Q) -> Poly {
        let mut out = Poly::zero(&self.amb);
        for (m, c) in &self.terms {
            out.add_term(
                Mono {
                    exps: m.exps.clone(),
                    eps: 0,
                },
                c * pow(value, m.eps),
            );
        }
        out
    }

    /// Substitutes `x_i <- factors[i] * x_i`.
    pub fn scale_coords(&self, factors: &[Q]) -> Poly {
        let mut out = Poly::zero(&self.amb);
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            for (e, f) in m.exps.iter().zip(factors) {
                coef *= pow(f, *e);
            }
            out.add_term(m.clone(), coef);
        }
        out
    }

    /// Substitutes `x_i <- eps * x_i` for every coordinate.
    pub fn eps_weighted(&self) -> Poly {
        self.map_monos(|m| Mono {
            exps: m.exps.clone(),
            eps: m.eps + m.degree(),
        })
    }

    /// The scaling morphism `I_t`: `x_i <- x_i / t`.
    pub fn scale_map(&self, t: &Q) -> Result<Poly, PolyError> {
        if t.is_zero() {
            return Err(PolyError::ZeroScale);
        }
        let inv = t.recip();
        Ok(self.scale_coords(&vec![inv; self.amb.n()]))
    }

    /// `Σ_k eps^(N-k) F^(k)` where `F^(k)` is the `deg_q = k` part of `f`.
    pub fn homogenize(&self, n: u32) -> Result<Poly, PolyError> {
        if self.has_h_vars() || self.has_eps() {
            return Err(PolyError::NotInSq);
        }
        let d = self.deg_q();
        if n < d {
            return Err(PolyError::DegreeTooLow { target: n, deg: d });
        }
        Ok(self.map_monos(|m| Mono {
            exps: m.exps.clone(),
            eps: n - self.mono_deg_q(m),
        }))
    }

    /// Sets `eps <- 1`.
    pub fn dehomogenize(&self) -> Poly {
        self.set_eps(&Q::one())
    }

    /// `{p, q} = Σ c^k_ij x_k ∂_i p ∂_j q`.
    pub fn checked_poisson(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        let g = &self.amb.algebra;
        let n = g.dim();
        let mut out = Poly::zero(&self.amb);
        let dq: Vec<Poly> = (0..n).map(|j| other.deriv(j)).collect();
        for i in 0..n {
            let dpi = self.deriv(i);
            if dpi.is_zero() {
                continue;
            }
            for (j, dqj) in dq.iter().enumerate() {
                let b = g.bracket(i, j);
                if b.is_empty() || dqj.is_zero() {
                    continue;
                }
                let prod = &dpi * dqj;
                for (k, c) in b {
                    out += &(&Poly::var(&self.amb, *k) * &prod).scale(c);
                }
            }
        }
        Ok(out)
    }

    pub fn poisson(&self, other: &Poly) -> Poly {
        self.checked_poisson(other).expect("ambient mismatch")
    }

    /// Applies the constant-coefficient operator obtained from `self` by
    /// `x_i ↦ ∂/∂x_i` to `f`; eps-exponents of both factors add.
    pub fn apply_as_operator(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(&f.amb);
        for (m, c) in &self.terms {
            let d = f.deriv_multi(&m.exps).shift_eps(m.eps).scale(c);
            out += &d;
        }
        out
    }

    /// Moves the polynomial to another ambient with the same number of coordinates.
    pub fn with_ambient(&self, amb: &Arc<Ambient>) -> Poly {
        assert_eq!(amb.n(), self.amb.n());
        Poly {
            amb: amb.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Re-indexes coordinates: old coordinate `i` becomes `map[i]` in `amb`.
    pub fn embed(&self, amb: &Arc<Ambient>, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.amb.n());
        let mut out = Poly::zero(amb);
        for (m, c) in &self.terms {
            let mut e = vec![0; amb.n()];
            for (i, &x) in m.exps.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Mono { exps: e, eps: m.eps }, c.clone());
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    /// Terms in descending monomial order, e.g. `3/2*x^2*eps + -1*y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.amb.names();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", fmt_q(c))?;
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", names[i])?,
                    _ => write!(f, "*{}^{}", names[i], e)?,
                }
            }
            match m.eps {
                0 => {}
                1 => write!(f, "*eps")?,
                e => write!(f, "*eps^{e}")?,
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl std::ops::$tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                let f: fn(&Poly, &Poly) -> Poly = $body;
                f(self, rhs)
            }
        }
        impl std::ops::$tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                std::ops::$tr::$method(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.checked_add(b).expect("ambient mismatch"));
binop!(Sub, sub, |a, b| a.checked_add(&-b).expect("ambient mismatch"));
binop!(Mul, mul, |a, b| a.checked_mul(b).expect("ambient mismatch"));

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            amb: self.amb.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::ops::AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.check(rhs).expect("ambient mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.check(rhs).expect("ambient mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

/// Exponent vectors of length `n` supported on `vars` with total degree
/// `<= d`, ordered by degree then lexicographically.
pub fn monomials_up_to(n: usize, vars: &[usize], d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut cur = vec![0u32; n];
        fill(&mut out, &mut cur, vars, deg);
    }
    out
}

fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, vars: &[usize], left: u32) {
    match vars.split_first() {
        None => {
            if left == 0 {
                out.push(cur.clone());
            }
        }
        Some((&v, rest)) => {
            for e in (0..=left).rev() {
                cur[v] = e;
                fill(out, cur, rest, left - e);
            }
            cur[v] = 0;
        }
    }
}
