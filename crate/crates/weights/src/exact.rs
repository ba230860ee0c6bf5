use crate::mc::{form_degree, inf_sign};
use crate::value::WeightValue;
use graphs::{Color, Graph, Special, Target};
use lie_core::rational::{one, q, qr, zero};
use lie_core::Q;

/// Derivation notes for every rule of the exact table.
pub const PROVENANCE: &[(&str, &str)] = &[
    ("empty", "no aerial vertex: the empty wedge is the constant 1"),
    (
        "dimension",
        "the wedge degree differs from the configuration-space dimension, so the integral vanishes",
    ),
    (
        "minus-ground",
        "an edge colored minus landing on the real line carries arg(z-a) - arg(z-a) = 0",
    ),
    (
        "small-loop",
        "the loop edge carries d arg z1; on the gauge circle it integrates to pi, normalized 1/2",
    ),
    (
        "factorized",
        "all aerial vertices land on the two ground points: Fubini over independent vertices, \
         each contributing (1/4pi^2) * area{0 < 2arg z < 2arg(z-1) < 2pi} = 1/2, sign from the order",
    ),
    (
        "bernoulli-1",
        "one vertex with edges to the ground point and to inf: 2 arg z1 runs over (0, 2pi) on the \
         gauge circle, normalized 1, times the sign of moving the inf edge first",
    ),
    (
        "antiparallel",
        "edges a->b and b->a of opposite colors carry the same one-form, since \
         phi_-(b, a) = phi_+(a, b) + 2pi, so the wedge vanishes",
    ),
    (
        "root-fiber",
        "two aerial vertices, the root sending one edge to the other vertex v and one to the \
         ground point: by Stokes the fiber integral over the root is 2pi^2 - 4pi arg v (plus) \
         or 0 (minus), and 2pi^2 - 4pi theta integrates to zero against 2 d theta on the gauge circle",
    ),
    (
        "cycle-fiber",
        "two aerial vertices a -> b, b -> a of one color, a also to the ground point and b to inf: \
         the fiber form over b is -2 dA ^ dB with A = arg(a - b), B = arg(a - conj b), and the \
         boundary terms pi^2/2 (real line), pi^2/2 (far arc), -pi^2 (around a) cancel",
    ),
];

pub fn provenance_note(id: &str) -> Option<&'static str> {
    PROVENANCE.iter().find(|(k, _)| *k == id).map(|(_, v)| *v)
}

/// Curated exact weights. `None` when the graph is not covered by a rule.
pub fn omega_exact(g: &Graph) -> Option<WeightValue> {
    g.validate(true).ok()?;
    let (value, note) = exact_rule(g)?;
    Some(WeightValue::exact(g.canonical_form(), value, note))
}

fn exact_rule(g: &Graph) -> Option<(Q, &'static str)> {
    if g.special == Some(Special::SmallLoop) {
        return Some((sign(g) * qr(1, 2), "small-loop"));
    }
    if g.n1 == 0 {
        return Some((one(), "empty"));
    }
    if form_degree(g) as i64 != g.config_dim() {
        return Some((zero(), "dimension"));
    }
    let minus_ground = g
        .edges
        .iter()
        .any(|e| e.color == Color::Minus && matches!(e.tgt, Target::Ground(_)));
    if minus_ground {
        return Some((zero(), "minus-ground"));
    }
    if has_antiparallel_opposite(g) {
        return Some((zero(), "antiparallel"));
    }
    if g.n2 == 2 && g.edges.iter().all(|e| matches!(e.tgt, Target::Ground(_))) {
        let mut w = one();
        for v in 0..g.n1 {
            let out = g.out_edges(v);
            let first = g.edges[out[0]].tgt;
            w *= if first == Target::Ground(0) { qr(1, 2) } else { qr(-1, 2) };
        }
        return Some((w, "factorized"));
    }
    if g.n2 == 1 && g.n1 == 1 && g.has_inf() {
        return Some((sign(g), "bernoulli-1"));
    }
    if g.n2 == 1 && g.n1 == 2 && g.has_inf() && root_to_other_and_ground(g) {
        return Some((zero(), "root-fiber"));
    }
    if g.n2 == 1 && g.n1 == 2 && g.has_inf() && same_color_cycle_fiber(g) {
        return Some((zero(), "cycle-fiber"));
    }
    None
}

fn has_antiparallel_opposite(g: &Graph) -> bool {
    g.edges.iter().any(|e| {
        let Target::Aerial(b) = e.tgt else { return false };
        g.edges.iter().any(|f| {
            f.src == b
                && f.tgt == Target::Aerial(e.src)
                && matches!(
                    (e.color, f.color),
                    (Color::Plus, Color::Minus) | (Color::Minus, Color::Plus)
                )
        })
    })
}

/// A vertex of in-degree 0 whose two edges go to the other aerial vertex
/// and to the ground point, while the other vertex's ground edge is plus.
fn root_to_other_and_ground(g: &Graph) -> bool {
    (0..2).any(|r| {
        let v = 1 - r;
        let out: Vec<Target> = g.out_edges(r).iter().map(|&k| g.edges[k].tgt).collect();
        g.in_degree(r) == 0
            && out.contains(&Target::Aerial(v))
            && out.contains(&Target::Ground(0))
            && g
                .edges
                .iter()
                .any(|e| e.src == v && e.tgt == Target::Ground(0) && e.color == Color::Plus)
    })
}

fn same_color_cycle_fiber(g: &Graph) -> bool {
    (0..2).any(|a| {
        let b = 1 - a;
        let edge = |s: usize, t: Target| g.edges.iter().find(|e| e.src == s && e.tgt == t);
        match (
            edge(a, Target::Aerial(b)),
            edge(b, Target::Aerial(a)),
            edge(a, Target::Ground(0)),
            edge(b, Target::Inf),
        ) {
            (Some(x), Some(y), Some(f), Some(_)) => x.color == y.color && f.color == Color::Plus,
            _ => false,
        }
    })
}

fn sign(g: &Graph) -> Q {
    q(inf_sign(g) as i64)
}
