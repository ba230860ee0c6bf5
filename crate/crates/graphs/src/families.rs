use crate::enumerate::{enumerate, ClassRep, EnumSpec, InfPolicy};
use crate::error::GraphError;
use crate::graph::{Color, Graph};

/// Bernoulli, wheel, or Bernoulli-attached-to-wheel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    B,
    W,
    BW,
}

#[derive(Clone, Debug, Default)]
pub struct ReductionFamily {
    pub b: Vec<ClassRep>,
    pub w: Vec<ClassRep>,
    pub bw: Vec<ClassRep>,
}

impl ReductionFamily {
    pub fn get(&self, f: Family) -> &[ClassRep] {
        match f {
            Family::B => &self.b,
            Family::W => &self.w,
            Family::BW => &self.bw,
        }
    }
}

/// Family of a graph with one ground vertex, from its signature
/// (number of edges deriving the ground function, presence of `inf`).
pub fn classify(g: &Graph) -> Option<Family> {
    if g.n2 != 1 || g.edges.len() != 2 * g.n1 || g.n1 == 0 {
        return None;
    }
    let f = g.ground_degree(0);
    match (g.has_inf(), f) {
        (true, k) if k == g.n1 => Some(Family::B),
        (false, k) if k == g.n1 => Some(Family::W),
        (true, k) if k + 1 == g.n1 => Some(Family::BW),
        _ => None,
    }
}

/// `B_i`, `W_i`, `BW_i` from the colored graphs with `i` aerial vertices, one
/// ground vertex and at most one edge to `inf`. `base` supplies the
/// double-edge policy and pruning; its vertex counts are overridden.
pub fn enumerate_reduction_family(
    i: usize,
    base: Option<&EnumSpec>,
) -> Result<ReductionFamily, GraphError> {
    let mut spec = base.cloned().unwrap_or_else(|| EnumSpec::new(i, 1, true));
    spec.n1 = i;
    spec.n2 = 1;
    spec.colored = true;
    spec.inf = InfPolicy::AtMostOne;
    let mut fam = ReductionFamily::default();
    if i == 0 {
        return Ok(fam);
    }
    for rep in enumerate(&spec)? {
        match classify(&rep.graph) {
            Some(Family::B) => fam.b.push(rep),
            Some(Family::W) => fam.w.push(rep),
            Some(Family::BW) => fam.bw.push(rep),
            None => {}
        }
    }
    Ok(fam)
}

/// Spec for the reduction differential on `S(q)`: ground edges colored plus
/// (a minus edge differentiates an h-variable, which `S(q)` lacks) and
/// aerial in-degree at most one (a linear bivector dies under two derivatives).
pub fn pruned_reduction_spec(i: usize) -> EnumSpec {
    let mut s = EnumSpec::new(i, 1, true);
    s.ground_color = Some(Color::Plus);
    s.max_aerial_indegree = Some(1);
    s
}
