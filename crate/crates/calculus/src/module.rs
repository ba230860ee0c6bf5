use crate::book::{Geometry, WeightBook};
use crate::error::CalcError;
use crate::linform::{Evaluated, SymPoly};
use crate::operator::graph_operator;
use graphs::{enumerate, small_loop, Color, EnumSpec, Graph, Target};
use lie_core::rational::{inv_factorial, qr};
use lie_core::{SplitData, Q};
use poly::{Ambient, Poly};
use rayon::prelude::*;

/// Highest order at which the corner actions are assembled.
pub const MAX_MODULE_ORDER: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `a *_1 b`: `a` on the vertical axis, `b` at the corner.
    Left,
    /// `a *_2 b`: `a` at the corner, `b` on the horizontal axis.
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TDirection {
    T1,
    T1Inv,
    T2,
}

/// A truncated corner action with the coefficient of each `eps^k` kept apart.
#[derive(Clone, Debug)]
pub struct ModuleAction {
    pub side: Side,
    pub parts: Vec<SymPoly>,
    /// Graphs with a nonzero operator on the given arguments, by order.
    pub contributing: Vec<(usize, Graph)>,
}

impl ModuleAction {
    /// `sum_k eps^k parts[k]`.
    pub fn series(&self) -> SymPoly {
        let amb = self.parts[0].ambient().clone();
        let mut out = SymPoly::zero(&amb);
        for (k, p) in self.parts.iter().enumerate() {
            for (m, w) in p.terms() {
                let mono = Poly::monomial(&amb, m.clone(), lie_core::rational::one());
                out.add_poly(&mono.shift_eps(k as u32), w);
            }
        }
        out
    }

    /// Whether some contributing graph derives ground vertex `g` through a
    /// minus edge.
    pub fn derives_with_minus(&self, g: usize) -> bool {
        self.contributing.iter().any(|(_, graph)| {
            graph
                .edges
                .iter()
                .any(|e| e.color == Color::Minus && e.tgt == Target::Ground(g))
        })
    }
}

/// Two-colored graphs with two ground vertices and different-colored double
/// edges allowed, plus the small loop on either ground vertex in both edge
/// orders at order one.
fn corner_graphs(n: usize) -> Result<Vec<(Graph, u64)>, CalcError> {
    let mut spec = EnumSpec::new(n, 2, true);
    spec.allow_mixed_double = true;
    let mut out: Vec<(Graph, u64)> = enumerate(&spec)?
        .into_iter()
        .map(|r| (r.graph, r.labeled_count))
        .collect();
    if n == 1 {
        for ground in 0..2 {
            let mut g = small_loop();
            g.n2 = 2;
            g.edges[0].tgt = Target::Ground(ground);
            let mut swapped = g.clone();
            swapped.edges.swap(0, 1);
            out.push((g, 1));
            out.push((swapped, 1));
        }
    }
    Ok(out)
}

/// `a *_1 b` or `a *_2 b` up to `eps^order`, restricted to `-lambda + h^perp`.
/// Corner weights beyond the empty graph and the small loop stay symbolic.
pub fn module_action(
    side: Side,
    a: &Poly,
    b: &Poly,
    split: &SplitData,
    order: usize,
) -> Result<ModuleAction, CalcError> {
    if order > MAX_MODULE_ORDER {
        return Err(CalcError::OrderUnsupported {
            order,
            max: MAX_MODULE_ORDER,
        });
    }
    let amb = a.ambient();
    if !Ambient::same(amb, b.ambient()) {
        return Err(poly::PolyError::AmbientMismatch.into());
    }
    let restrict: Vec<Q> = split.lambda.iter().map(|c| -c).collect();
    let mut parts = vec![SymPoly::from_poly(&a.checked_mul(b)?.eval_h(&restrict))];
    let mut contributing = Vec::new();
    for n in 1..=order {
        let scale = inv_factorial(n) * qr(1, 1 << n);
        let found: Vec<(Graph, SymPoly)> = corner_graphs(n)?
            .into_par_iter()
            .filter_map(|(g, count)| {
                let op = graph_operator(&g, amb, Some(&restrict));
                let v = op.apply2(a, b).eval_h(&restrict);
                if v.is_zero() {
                    return None;
                }
                let w = WeightBook::weight_form(&g, Geometry::Corner)
                    .scale(&(&scale * Q::from_integer(count.into())));
                let mut s = SymPoly::zero(amb);
                s.add_poly(&v, &w);
                Some((g, s))
            })
            .collect();
        let mut part = SymPoly::zero(amb);
        for (g, s) in found {
            part.add(&s);
            contributing.push((n, g));
        }
        parts.push(part);
    }
    Ok(ModuleAction {
        side,
        parts,
        contributing,
    })
}


fn exact_part(book: &WeightBook, s: &SymPoly) -> Result<Poly, CalcError> {
    match book.resolve(s)? {
        Evaluated::Exact(p) => Ok(p),
        Evaluated::Numeric(_) => Err(CalcError::Untabulated(s.symbols().into_iter().collect())),
    }
}

/// `T1`, its inverse on `S(q)[eps]`, or `T2`, truncated at `eps^order`.
pub fn t_operator(
    dir: TDirection,
    f: &Poly,
    split: &SplitData,
    order: usize,
    book: &WeightBook,
) -> Result<Poly, CalcError> {
    if order > MAX_MODULE_ORDER {
        return Err(CalcError::OrderUnsupported {
            order,
            max: MAX_MODULE_ORDER,
        });
    }
    if f.has_h_vars() {
        return Err(CalcError::NotInSq(f.to_string()));
    }
    let one = Poly::one(f.ambient());
    let act = |p: &Poly| match dir {
        TDirection::T2 => module_action(Side::Right, &one, p, split, order),
        _ => module_action(Side::Left, p, &one, split, order),
    };
    let parts = |p: &Poly| -> Result<Vec<Poly>, CalcError> {
        act(p)?.parts.iter().map(|s| exact_part(book, s)).collect()
    };
    let direct = parts(f)?;
    if dir != TDirection::T1Inv {
        let mut out = Poly::zero(f.ambient());
        for (k, p) in direct.iter().enumerate() {
            out += &p.shift_eps(k as u32);
        }
        return Ok(out.truncate_eps(order as u32));
    }
    // T1 = 1 + eps A1 + eps^2 A2, so T1^-1 = 1 - eps A1 + eps^2 (A1^2 - A2).
    let mut out = f.clone();
    if order >= 1 {
        out -= &direct[1].shift_eps(1);
    }
    if order >= 2 {
        let a1a1 = parts(&direct[1])?;
        out += &(&a1a1[1] - &direct[2]).shift_eps(2);
    }
    Ok(out.truncate_eps(order as u32))
}
