use crate::book::{Geometry, WeightBook};
use crate::error::CalcError;
use crate::linform::{Evaluated, SymPoly};
use crate::operator::graph_operator;
use graphs::{enumerate_q_n2, DEFAULT_MAX_N};
use lie_core::rational::{inv_factorial, qr};
use lie_core::Q;
use poly::{Ambient, Poly};
use rayon::prelude::*;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Uncolored graphs, every label.
    Kontsevich,
    /// Two-colored graphs on `S(q)`, restricted to the character.
    CattaneoFelder,
}

/// `sum_{n <= order} eps^n / (n! 2^n) sum_Gamma w_Gamma B_Gamma(f, g)` with the
/// untabulated weights kept symbolic. `restrict` sets the h-coordinates of
/// every coefficient after differentiation.
pub fn star_symbolic(
    f: &Poly,
    g: &Poly,
    flavor: Flavor,
    order: usize,
    restrict: Option<&[Q]>,
) -> Result<SymPoly, CalcError> {
    if order > DEFAULT_MAX_N {
        return Err(CalcError::OrderUnsupported {
            order,
            max: DEFAULT_MAX_N,
        });
    }
    let amb: &Arc<Ambient> = f.ambient();
    if !Ambient::same(amb, g.ambient()) {
        return Err(poly::PolyError::AmbientMismatch.into());
    }
    let colored = flavor == Flavor::CattaneoFelder;
    if colored && (f.has_h_vars() || g.has_h_vars()) {
        return Err(CalcError::NotInSq(format!("{f} or {g}")));
    }
    let base = f.checked_mul(g)?;
    let mut out = SymPoly::from_poly(&match restrict {
        Some(vals) => base.eval_h(vals),
        None => base,
    });
    for n in 1..=order {
        let classes = enumerate_q_n2(n, colored)?;
        let scale = inv_factorial(n) * qr(1, 1 << n);
        let parts: Vec<SymPoly> = classes
            .par_iter()
            .filter_map(|rep| {
                let op = graph_operator(&rep.graph, amb, restrict);
                let v = op.apply2(f, g);
                if v.is_zero() {
                    return None;
                }
                let w = WeightBook::weight_form(&rep.graph, Geometry::HalfPlane)
                    .scale(&(&scale * Q::from_integer(rep.labeled_count.into())));
                let mut s = SymPoly::zero(amb);
                s.add_poly(&v.shift_eps(n as u32), &w);
                Some(s)
            })
            .collect();
        for p in parts {
            out.add(&p);
        }
    }
    Ok(out)
}

/// The truncated star product resolved through `book`.
pub fn star_product(
    f: &Poly,
    g: &Poly,
    flavor: Flavor,
    order: usize,
    restrict: Option<&[Q]>,
    book: &WeightBook,
) -> Result<Evaluated, CalcError> {
    book.resolve(&star_symbolic(f, g, flavor, order, restrict)?)
}
