use lie_core::rational::{fmt_q, pow, Q};
use lie_core::{CentralExtension, LieAlgebra, SplitData};
use num_traits::{One, Zero};
use poly::{Mono, Poly};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

/// How a trailing h-letter is rewritten modulo the left ideal:
/// `H_i ≡ scalar · eps^eps · letter`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealRule {
    pub scalar: Q,
    pub eps: u32,
    /// A central letter that multiplies the replacement (the `T` of `g_T`).
    pub letter: Option<usize>,
}

type Word = Vec<u32>;
type Terms = Vec<(Word, u32, Q)>;

/// Multiplication context for `U_eps(g)` with a fixed split and ideal.
///
/// PBW words list q-letters first, then h-letters, each block in increasing
/// basis index. Exponent vectors are indexed by basis index.
pub struct Uea {
    algebra: Arc<LieAlgebra>,
    t: usize,
    order: Vec<usize>,
    rank: Vec<usize>,
    rules: Vec<Option<IdealRule>>,
    cache: Mutex<HashMap<(Word, usize), Arc<Terms>>>,
}

impl fmt::Debug for Uea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Uea")
            .field("labels", &self.algebra.labels())
            .field("t", &self.t)
            .field("rules", &self.rules)
            .finish()
    }
}

impl Uea {
    fn build(algebra: Arc<LieAlgebra>, t: usize, rules: Vec<Option<IdealRule>>) -> Arc<Self> {
        let n = algebra.dim();
        let order: Vec<usize> = (t..n).chain(0..t).collect();
        let mut rank = vec![0; n];
        for (p, &i) in order.iter().enumerate() {
            rank[i] = p;
        }
        Arc::new(Self {
            algebra,
            t,
            order,
            rank,
            rules,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// `U_eps(g)` modulo `U_eps(g) h_{λ+ρ}`: `H_i ≡ -(λ+ρ)(H_i)`, times `eps`
    /// when `scale_character_by_eps` is set.
    pub fn new(s: &SplitData, scale_character_by_eps: bool) -> Arc<Self> {
        let rules = (0..s.t)
            .map(|i| {
                Some(IdealRule {
                    scalar: -s.lambda_plus_rho(i),
                    eps: u32::from(scale_character_by_eps),
                    letter: None,
                })
            })
            .collect();
        Self::build(s.algebra.clone(), s.t, rules)
    }

    /// `U(g_T)` modulo the left ideal generated by `H_i + (λ+ρ)(H_i)·T`.
    /// The letter `T` itself is not reduced.
    pub fn central(ext: &CentralExtension, base: &SplitData) -> Arc<Self> {
        let t = ext.split.t;
        let mut rules = vec![None; t];
        for (i, lam) in &ext.generators {
            rules[*i] = Some(IdealRule {
                scalar: -(lam + &base.rho[*i]),
                eps: 0,
                letter: Some(ext.t_index),
            });
        }
        Self::build(ext.algebra.clone(), t, rules)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.algebra.dim()
    }

    /// Basis indices in PBW order.
    pub fn pbw_order(&self) -> &[usize] {
        &self.order
    }

    pub fn rule(&self, i: usize) -> Option<&IdealRule> {
        self.rules.get(i).and_then(|r| r.as_ref())
    }

    fn last_letter(&self, w: &[u32]) -> Option<usize> {
        self.order.iter().rev().copied().find(|&i| w[i] > 0)
    }

    /// Normal form of `word · X_k`.
    fn mul_letter(&self, w: &Word, k: usize) -> Arc<Terms> {
        let key = (w.clone(), k);
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let res = match self.last_letter(w) {
            Some(j) if self.rank[k] < self.rank[j] => {
                // W' X_j X_k = (W' X_k) X_j + eps W' [X_j, X_k]
                let mut wp = w.clone();
                wp[j] -= 1;
                let mut acc: BTreeMap<(Word, u32), Q> = BTreeMap::new();
                for (u, e, c) in self.mul_letter(&wp, k).iter() {
                    for (u2, e2, c2) in self.mul_letter(u, j).iter() {
                        *acc.entry((u2.clone(), e + e2)).or_insert_with(Q::zero) += c * c2;
                    }
                }
                for (m, cm) in self.algebra.bracket(j, k) {
                    for (u, e, c) in self.mul_letter(&wp, *m).iter() {
                        *acc.entry((u.clone(), e + 1)).or_insert_with(Q::zero) += c * cm;
                    }
                }
                acc.into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|((u, e), c)| (u, e, c))
                    .collect()
            }
            _ => {
                let mut u = w.clone();
                u[k] += 1;
                vec![(u, 0, Q::one())]
            }
        };
        let res = Arc::new(res);
        self.cache.lock().unwrap().insert(key, res.clone());
        res
    }

    /// Letters of a word in PBW order.
    pub fn letters(&self, w: &[u32]) -> Vec<usize> {
        self.order
            .iter()
            .flat_map(|&i| std::iter::repeat_n(i, w[i] as usize))
            .collect()
    }
}

/// Element of `U_eps(g)` in PBW normal form.
#[derive(Clone)]
pub struct UeaElem {
    ctx: Arc<Uea>,
    terms: BTreeMap<Mono, Q>,
}

impl PartialEq for UeaElem {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl fmt::Debug for UeaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UeaElem({self})")
    }
}

impl UeaElem {
    pub fn zero(ctx: &Arc<Uea>) -> Self {
        Self {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<Uea>) -> Self {
        Self::word(ctx, vec![0; ctx.n()], 0, Q::one())
    }

    /// The generator `X_i`.
    pub fn gen(ctx: &Arc<Uea>, i: usize) -> Self {
        let mut w = vec![0; ctx.n()];
        w[i] = 1;
        Self::word(ctx, w, 0, Q::one())
    }

    /// The scalar `c`.
    pub fn scalar(ctx: &Arc<Uea>, c: Q) -> Self {
        Self::word(ctx, vec![0; ctx.n()], 0, c)
    }

    /// `c · eps^eps · (PBW word with exponents w)`.
    pub fn word(ctx: &Arc<Uea>, w: Vec<u32>, eps: u32, c: Q) -> Self {
        let mut e = Self::zero(ctx);
        e.add(Mono { exps: w, eps }, c);
        e
    }

    /// Reads each monomial of `p` as a PBW word (no reordering).
    pub fn from_pbw_poly(ctx: &Arc<Uea>, p: &Poly) -> Self {
        assert_eq!(p.ambient().n(), ctx.n());
        let mut e = Self::zero(ctx);
        for (m, c) in p.terms() {
            e.add(m.clone(), c.clone());
        }
        e
    }

    /// The inverse of [`UeaElem::from_pbw_poly`].
    pub fn to_pbw_poly(&self, amb: &Arc<poly::Ambient>) -> Poly {
        Poly::from_terms(amb, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn ctx(&self) -> &Arc<Uea> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, x) in &self.terms {
            out.add(m.clone(), x * c);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.ctx, &other.ctx), "ambient mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&-Q::one()))
    }

    fn mul_letter(&self, k: usize) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            for (u, e, c2) in self.ctx.mul_letter(&m.exps, k).iter() {
                out.add(
                    Mono {
                        exps: u.clone(),
                        eps: m.eps + e,
                    },
                    c * c2,
                );
            }
        }
        out
    }

    /// PBW normal form of `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.ctx, &other.ctx), "ambient mismatch");
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &other.terms {
            let mut cur = self.shift_eps(m.eps).scale(c);
            for k in self.ctx.letters(&m.exps) {
                cur = cur.mul_letter(k);
            }
            out = out.plus(&cur);
        }
        out
    }

    /// Product of generators in the given (arbitrary) order.
    pub fn product_of_letters(ctx: &Arc<Uea>, letters: &[usize]) -> Self {
        let mut cur = Self::one(ctx);
        for &k in letters {
            cur = cur.mul_letter(k);
        }
        cur
    }

    pub fn shift_eps(&self, k: u32) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add(
                Mono {
                    exps: m.exps.clone(),
                    eps: m.eps + k,
                },
                c.clone(),
            );
        }
        out
    }

    /// Substitutes `eps <- value`.
    pub fn set_eps(&self, value: &Q) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add(
                Mono {
                    exps: m.exps.clone(),
                    eps: 0,
                },
                c * pow(value, m.eps),
            );
        }
        out
    }

    /// `H_i · a - a · H_i`.
    pub fn adjoint_action(&self, i: usize) -> Self {
        let h = Self::gen(&self.ctx, i);
        h.mul(self).minus(&self.mul(&h))
    }

    /// Canonical representative modulo the left ideal: every reducible
    /// h-letter is replaced by its rule.
    pub fn ideal_reduce(&self) -> Self {
        let ctx = &self.ctx;
        let mut out = Self::zero(ctx);
        'terms: for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            let mut eps = m.eps;
            let mut coef = c.clone();
            for i in 0..ctx.t {
                let d = m.exps[i];
                if d == 0 {
                    continue;
                }
                let Some(rule) = ctx.rule(i) else { continue };
                if rule.scalar.is_zero() {
                    continue 'terms;
                }
                exps[i] = 0;
                coef *= pow(&rule.scalar, d);
                eps += rule.eps * d;
                if let Some(l) = rule.letter {
                    exps[l] += d;
                }
            }
            out.add(Mono { exps, eps }, coef);
        }
        out
    }

    /// True when no term contains a reducible h-letter.
    pub fn is_reduced(&self) -> bool {
        self.terms
            .keys()
            .all(|m| (0..self.ctx.t).all(|i| m.exps[i] == 0 || self.ctx.rule(i).is_none()))
    }
}

impl fmt::Display for UeaElem {
    /// Mirrors polynomial rendering with letters in PBW order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let ctx = &self.ctx;
        let names = ctx.algebra.labels();
        let mut keyed: Vec<(Vec<u32>, u32, &Q)> = self
            .terms
            .iter()
            .map(|(m, c)| (ctx.order.iter().map(|&i| m.exps[i]).collect(), m.eps, c))
            .collect();
        keyed.sort_by(|a, b| (&b.0, b.1).cmp(&(&a.0, a.1)));
        for (n, (ranked, eps, c)) in keyed.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", fmt_q(c))?;
            for (p, &e) in ranked.iter().enumerate() {
                let name = &names[ctx.order[p]];
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
            match eps {
                0 => {}
                1 => write!(f, "*eps")?,
                e => write!(f, "*eps^{e}")?,
            }
        }
        Ok(())
    }
}

/// `β_eps`: average of the products over all distinct orderings of the letters.
pub(crate) fn symmetrize_word(ctx: &Arc<Uea>, exps: &[u32]) -> UeaElem {
    let mut letters: Vec<usize> = exps
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
        .collect();
    let mut acc = UeaElem::zero(ctx);
    let mut count = 0u64;
    // distinct permutations in lexicographic order
    letters.sort();
    loop {
        acc = acc.plus(&UeaElem::product_of_letters(ctx, &letters));
        count += 1;
        if !next_permutation(&mut letters) {
            break;
        }
    }
    acc.scale(&Q::new(1.into(), count.into()))
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl UeaElem {
    /// The symmetrization map `β_eps` applied to a polynomial; eps passes through.
    pub fn symmetrize(ctx: &Arc<Uea>, p: &Poly) -> Self {
        assert_eq!(p.ambient().n(), ctx.n());
        let mut out = Self::zero(ctx);
        for (m, c) in p.terms() {
            out = out.plus(&symmetrize_word(ctx, &m.exps).shift_eps(m.eps).scale(c));
        }
        out
    }
}
