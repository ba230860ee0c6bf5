//! Brute-force reference enumeration, independent of the DFS enumerator and
//! of canonical strings: raw edge lists are generated without constraints,
//! filtered by a direct admissibility check, and grouped by explicit
//! isomorphism tests.

use crate::graph::{next_permutation, Color, Edge, Graph, Target};

/// Raw search parameters.
#[derive(Clone, Copy, Debug)]
pub struct RawSpec {
    pub n1: usize,
    pub n2: usize,
    pub colored: bool,
    pub allow_inf: bool,
    pub allow_mixed_double: bool,
}

fn raw_options(s: &RawSpec) -> Vec<(Target, Color)> {
    let colors: &[Color] = if s.colored {
        &[Color::Plus, Color::Minus]
    } else {
        &[Color::Uncolored]
    };
    let mut targets: Vec<Target> = (0..s.n1).map(Target::Aerial).collect();
    targets.extend((0..s.n2).map(Target::Ground));
    if s.allow_inf {
        targets.push(Target::Inf);
    }
    let mut out = Vec::new();
    for t in targets {
        for &c in colors {
            out.push((t, c));
        }
    }
    out
}

fn admissible(s: &RawSpec, edges: &[Edge]) -> bool {
    let mut infs = 0;
    for (a, e) in edges.iter().enumerate() {
        if e.tgt == Target::Aerial(e.src) {
            return false;
        }
        if e.tgt == Target::Inf {
            infs += 1;
            if e.color != Color::Minus {
                return false;
            }
        }
        for f in &edges[a + 1..] {
            if f.src == e.src && f.tgt == e.tgt && (f.color == e.color || !s.allow_mixed_double) {
                return false;
            }
        }
    }
    infs <= 1
}

fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n1 != b.n1 || a.edges.len() != b.edges.len() {
        return false;
    }
    let mut perm: Vec<usize> = (0..a.n1).collect();
    loop {
        let ok = (0..a.n1).all(|v| {
            let ea: Vec<(Target, Color)> = a
                .out_edges(v)
                .into_iter()
                .map(|k| {
                    let e = a.edges[k];
                    let t = match e.tgt {
                        Target::Aerial(u) => Target::Aerial(perm[u]),
                        t => t,
                    };
                    (t, e.color)
                })
                .collect();
            let eb: Vec<(Target, Color)> = b
                .out_edges(perm[v])
                .into_iter()
                .map(|k| (b.edges[k].tgt, b.edges[k].color))
                .collect();
            ea == eb
        });
        if ok {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn invariant(g: &Graph) -> Vec<usize> {
    let mut indeg: Vec<usize> = (0..g.n1).map(|v| g.in_degree(v)).collect();
    indeg.sort();
    let mut key = indeg;
    for k in 0..g.n2 {
        key.push(g.ground_degree(k));
    }
    key.push(usize::from(g.has_inf()));
    for c in [Color::Plus, Color::Minus] {
        key.push(g.edges.iter().filter(|e| e.color == c).count());
    }
    key
}

/// Isomorphism classes among all admissible raw graphs accepted by `keep`.
pub fn raw_classes(s: &RawSpec, keep: impl Fn(&Graph) -> bool) -> Vec<Graph> {
    let opts = raw_options(s);
    let pairs: Vec<[(Target, Color); 2]> = opts
        .iter()
        .flat_map(|&a| opts.iter().map(move |&b| [a, b]))
        .collect();
    let mut buckets: std::collections::HashMap<Vec<usize>, Vec<Graph>> = Default::default();
    let mut idx = vec![0usize; s.n1];
    if s.n1 == 0 {
        let g = Graph::empty(s.n2);
        return if keep(&g) { vec![g] } else { vec![] };
    }
    loop {
        let mut edges = Vec::with_capacity(2 * s.n1);
        for (v, &p) in idx.iter().enumerate() {
            for &(tgt, color) in &pairs[p] {
                edges.push(Edge { src: v, tgt, color });
            }
        }
        if admissible(s, &edges) {
            let g = Graph::new(s.n1, s.n2, edges);
            if keep(&g) {
                let bucket = buckets.entry(invariant(&g)).or_default();
                if !bucket.iter().any(|r| isomorphic(r, &g)) {
                    bucket.push(g);
                }
            }
        }
        // odometer
        let mut v = 0;
        loop {
            if v == s.n1 {
                return buckets.into_values().flatten().collect();
            }
            idx[v] += 1;
            if idx[v] < pairs.len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}
