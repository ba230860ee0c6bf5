use graphs::{Color, Graph, Target};
use lie_core::rational::one;
use lie_core::Q;
use num_traits::Zero;
use poly::{Ambient, Mono, Poly};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Derivative multi-indices on each ground function and the label of the
/// edge to `inf`, if any.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpKey {
    pub derivs: Vec<Vec<u32>>,
    pub inf: Option<usize>,
}

/// `B_Gamma` written as `sum_key coeff(x) * prod_g d^{alpha_g} F_g (x) H*_inf`.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphOperator {
    pub amb: Arc<Ambient>,
    pub terms: BTreeMap<OpKey, Poly>,
}

/// `sum_k c^k_{ij} x_k` as a constant plus q-linear part after restriction.
#[derive(Clone)]
enum Factor {
    Const(Q),
    Linear(Poly),
}

impl GraphOperator {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies a one-ground operator; the result is indexed by the label of
    /// the edge to `inf` (`None` without one).
    pub fn apply1(&self, f: &Poly) -> BTreeMap<Option<usize>, Poly> {
        let mut out: BTreeMap<Option<usize>, Poly> = BTreeMap::new();
        for (k, c) in &self.terms {
            let d = f.deriv_multi(&k.derivs[0]);
            if d.is_zero() {
                continue;
            }
            let e = out.entry(k.inf).or_insert_with(|| Poly::zero(&self.amb));
            *e += &(c * &d);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Applies a two-ground operator.
    pub fn apply2(&self, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero(&self.amb);
        let mut cache: BTreeMap<&[u32], Poly> = BTreeMap::new();
        for (k, c) in &self.terms {
            let df = f.deriv_multi(&k.derivs[0]);
            if df.is_zero() {
                continue;
            }
            let dg = cache
                .entry(&k.derivs[1])
                .or_insert_with(|| g.deriv_multi(&k.derivs[1]));
            if dg.is_zero() {
                continue;
            }
            out += &(&(c * &df) * &*dg);
        }
        out
    }

    /// `deg_q(coefficient) - |alpha|` over all terms, when it is constant.
    pub fn q_degree_shift(&self) -> Option<i64> {
        let t = self.amb.t;
        let mut shift = None;
        for (k, c) in &self.terms {
            let order: i64 = k.derivs.iter().flat_map(|a| a[t..].iter()).map(|&a| a as i64).sum();
            for (m, _) in c.terms() {
                let s = m.exps[t..].iter().map(|&e| e as i64).sum::<i64>() - order;
                match shift {
                    None => shift = Some(s),
                    Some(p) if p != s => return None,
                    _ => {}
                }
            }
        }
        shift.or(Some(0))
    }
}

/// Builds `B_Gamma` by summing over labellings. Minus edges take h-labels
/// `0..t`, plus edges q-labels `t..n`, uncolored edges any label. A vertex
/// contributes `pi^{L(e1) L(e2)}` differentiated by the labels of its
/// incoming edges: linear, constant or zero. With `restrict`, the
/// h-coordinates are set to the given values after differentiation.
pub fn graph_operator(g: &Graph, amb: &Arc<Ambient>, restrict: Option<&[Q]>) -> GraphOperator {
    let n = amb.n();
    let t = amb.t;
    let alg = &amb.algebra;
    let m = g.edges.len();
    let domain = |c: Color| match c {
        Color::Minus => 0..t,
        Color::Plus => t..n,
        Color::Uncolored => 0..n,
    };
    // Vertex v is complete once all of its out- and in-edges are labelled.
    let mut ready = vec![0usize; g.n1];
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); g.n1];
    for (k, e) in g.edges.iter().enumerate() {
        ready[e.src] = ready[e.src].max(k);
        if let Target::Aerial(v) = e.tgt {
            ready[v] = ready[v].max(k);
            incoming[v].push(k);
        }
    }
    let out: Vec<Vec<usize>> = (0..g.n1).map(|v| g.out_edges(v)).collect();
    let mut complete_at: Vec<Vec<usize>> = vec![Vec::new(); m];
    for v in 0..g.n1 {
        complete_at[ready[v]].push(v);
    }

    let linear = |i: usize, j: usize| -> Factor {
        let mut p = Poly::zero(amb);
        let mut c0 = Q::zero();
        for (k, c) in alg.bracket(i, j) {
            match restrict {
                Some(vals) if *k < t => c0 += c * &vals[*k],
                _ => p += &Poly::monomial(amb, unit(n, *k), c.clone()),
            }
        }
        if p.is_zero() {
            Factor::Const(c0)
        } else {
            p += &Poly::constant(amb, c0);
            Factor::Linear(p)
        }
    };
    let factor = |v: usize, labels: &[usize]| -> Factor {
        let (i, j) = (labels[out[v][0]], labels[out[v][1]]);
        match incoming[v].as_slice() {
            [] => linear(i, j),
            [k] => Factor::Const(alg.c(i, j, labels[*k])),
            _ => Factor::Const(Q::zero()),
        }
    };

    let mut terms: BTreeMap<OpKey, Poly> = BTreeMap::new();
    let mut labels = vec![0usize; m];
    let mut factors: Vec<Factor> = Vec::with_capacity(g.n1);
    #[allow(clippy::too_many_arguments)]
    fn walk(
        k: usize,
        g: &Graph,
        amb: &Arc<Ambient>,
        labels: &mut Vec<usize>,
        factors: &mut Vec<Factor>,
        complete_at: &[Vec<usize>],
        domain: &dyn Fn(Color) -> std::ops::Range<usize>,
        factor: &dyn Fn(usize, &[usize]) -> Factor,
        terms: &mut BTreeMap<OpKey, Poly>,
    ) {
        if k == g.edges.len() {
            leaf(g, amb, labels, factors, terms);
            return;
        }
        for l in domain(g.edges[k].color) {
            labels[k] = l;
            let before = factors.len();
            let mut dead = false;
            for &v in &complete_at[k] {
                let f = factor(v, labels);
                if matches!(&f, Factor::Const(c) if c.is_zero()) {
                    dead = true;
                    break;
                }
                factors.push(f);
            }
            if !dead {
                walk(k + 1, g, amb, labels, factors, complete_at, domain, factor, terms);
            }
            factors.truncate(before);
        }
    }
    if g.n1 == 0 {
        leaf(g, amb, &labels, &factors, &mut terms);
    } else {
        walk(
            0,
            g,
            amb,
            &mut labels,
            &mut factors,
            &complete_at,
            &domain,
            &factor,
            &mut terms,
        );
    }
    terms.retain(|_, p| !p.is_zero());
    GraphOperator {
        amb: amb.clone(),
        terms,
    }
}

fn unit(n: usize, k: usize) -> Mono {
    let mut m = Mono::one(n);
    m.exps[k] = 1;
    m
}

fn leaf(
    g: &Graph,
    amb: &Arc<Ambient>,
    labels: &[usize],
    factors: &[Factor],
    terms: &mut BTreeMap<OpKey, Poly>,
) {
    let n = amb.n();
    let mut c = one();
    let mut p = Poly::one(amb);
    for f in factors {
        match f {
            Factor::Const(x) => c *= x,
            Factor::Linear(l) => p = &p * l,
        }
    }
    let mut derivs = vec![vec![0u32; n]; g.n2];
    let mut inf = None;
    for (k, e) in g.edges.iter().enumerate() {
        match e.tgt {
            Target::Ground(x) => derivs[x][labels[k]] += 1,
            Target::Inf => inf = Some(labels[k]),
            Target::Aerial(_) => {}
        }
    }
    let e = terms
        .entry(OpKey { derivs, inf })
        .or_insert_with(|| Poly::zero(amb));
    *e += &p.scale(&c);
}
