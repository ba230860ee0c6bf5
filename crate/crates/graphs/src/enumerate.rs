use crate::error::GraphError;
use crate::graph::{Color, Edge, Graph, Target};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfPolicy {
    Forbidden,
    AtMostOne,
    ExactlyOne,
}

/// What to enumerate. Every aerial vertex gets an ordered pair of edges.
#[derive(Clone, Debug)]
pub struct EnumSpec {
    pub n1: usize,
    pub n2: usize,
    pub colored: bool,
    pub inf: InfPolicy,
    pub allow_mixed_double: bool,
    /// Prune graphs in which an aerial vertex receives more edges than this.
    pub max_aerial_indegree: Option<usize>,
    /// Restrict the color of edges landing on ground vertices.
    pub ground_color: Option<Color>,
    pub max_n: usize,
    /// Abort once this many complete labeled graphs have been produced.
    pub leaf_cap: u64,
}

impl EnumSpec {
    pub fn new(n1: usize, n2: usize, colored: bool) -> Self {
        Self {
            n1,
            n2,
            colored,
            inf: InfPolicy::Forbidden,
            allow_mixed_double: false,
            max_aerial_indegree: None,
            ground_color: None,
            max_n: crate::DEFAULT_MAX_N,
            leaf_cap: 5_000_000,
        }
    }
}

/// An isomorphism class with the number of labeled graphs it contains
/// (`n1! / |Aut|`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRep {
    pub graph: Graph,
    pub labeled_count: u64,
}

fn options(spec: &EnumSpec, v: usize) -> Vec<(Target, Color)> {
    let colors: &[Color] = if spec.colored {
        &[Color::Plus, Color::Minus]
    } else {
        &[Color::Uncolored]
    };
    let mut out = Vec::new();
    for u in 0..spec.n1 {
        if u != v {
            for &c in colors {
                out.push((Target::Aerial(u), c));
            }
        }
    }
    for g in 0..spec.n2 {
        for &c in colors {
            if spec.ground_color.is_none_or(|gc| gc == c) {
                out.push((Target::Ground(g), c));
            }
        }
    }
    if spec.inf != InfPolicy::Forbidden && spec.colored {
        out.push((Target::Inf, Color::Minus));
    }
    out
}

struct State {
    edges: Vec<Edge>,
    indeg: Vec<usize>,
    infs: usize,
}

fn dfs(
    spec: &EnumSpec,
    opts: &[Vec<(Target, Color)>],
    v: usize,
    st: &mut State,
    out: &mut BTreeMap<String, ClassRep>,
    leaves: &AtomicU64,
) -> Result<(), GraphError> {
    if v == spec.n1 {
        if spec.inf == InfPolicy::ExactlyOne && st.infs != 1 {
            return Ok(());
        }
        let n = leaves.fetch_add(1, Ordering::Relaxed) + 1;
        if n > spec.leaf_cap {
            return Err(GraphError::SearchTooLarge {
                size: n as u128,
                cap: spec.leaf_cap as u128,
            });
        }
        let g = Graph::new(spec.n1, spec.n2, st.edges.clone());
        let (key, perm, _) = g.canonical_with_perm();
        out.entry(key)
            .or_insert_with(|| ClassRep {
                graph: g.relabel(&perm),
                labeled_count: 0,
            })
            .labeled_count += 1;
        return Ok(());
    }
    for (a, &(t1, c1)) in opts[v].iter().enumerate() {
        for (b, &(t2, c2)) in opts[v].iter().enumerate() {
            if a == b {
                continue;
            }
            if t1 == t2 && !(spec.allow_mixed_double && c1 != c2) {
                continue;
            }
            let new_inf = usize::from(t1 == Target::Inf) + usize::from(t2 == Target::Inf);
            if st.infs + new_inf > 1 {
                continue;
            }
            let mut ok = true;
            for t in [t1, t2] {
                if let Target::Aerial(u) = t {
                    st.indeg[u] += 1;
                    if spec.max_aerial_indegree.is_some_and(|m| st.indeg[u] > m) {
                        ok = false;
                    }
                }
            }
            if ok {
                st.edges.push(Edge { src: v, tgt: t1, color: c1 });
                st.edges.push(Edge { src: v, tgt: t2, color: c2 });
                st.infs += new_inf;
                let r = dfs(spec, opts, v + 1, st, out, leaves);
                st.infs -= new_inf;
                st.edges.truncate(st.edges.len() - 2);
                if r.is_err() {
                    for t in [t1, t2] {
                        if let Target::Aerial(u) = t {
                            st.indeg[u] -= 1;
                        }
                    }
                    return r;
                }
            }
            for t in [t1, t2] {
                if let Target::Aerial(u) = t {
                    st.indeg[u] -= 1;
                }
            }
        }
    }
    Ok(())
}

/// All isomorphism classes of graphs matching `spec`, sorted by canonical form.
/// The search is split over the first vertex's edge pair and merged
/// deterministically.
pub fn enumerate(spec: &EnumSpec) -> Result<Vec<ClassRep>, GraphError> {
    if spec.n1 > spec.max_n {
        return Err(GraphError::TooLarge {
            n: spec.n1,
            max: spec.max_n,
        });
    }
    if 2 * spec.n1 + spec.n2 < 2 {
        return Ok(Vec::new());
    }
    if spec.n1 == 0 {
        return Ok(vec![ClassRep {
            graph: Graph::empty(spec.n2),
            labeled_count: 1,
        }]);
    }
    let opts: Vec<Vec<(Target, Color)>> = (0..spec.n1).map(|v| options(spec, v)).collect();
    let leaves = AtomicU64::new(0);
    let first: Vec<(usize, usize)> = (0..opts[0].len())
        .flat_map(|a| (0..opts[0].len()).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b)
        .collect();
    let parts: Vec<Result<BTreeMap<String, ClassRep>, GraphError>> = first
        .par_iter()
        .map(|&(a, b)| {
            let sub = spec.clone();
            let mut o0 = opts.clone();
            o0[0] = vec![opts[0][a], opts[0][b]];
            let mut out = BTreeMap::new();
            let mut st = State {
                edges: Vec::new(),
                indeg: vec![0; spec.n1],
                infs: 0,
            };
            // only the ordered pair (first, second) of the restricted list
            dfs_first(&sub, &o0, &mut st, &mut out, &leaves)?;
            Ok(out)
        })
        .collect();
    let mut merged: BTreeMap<String, ClassRep> = BTreeMap::new();
    for p in parts {
        for (k, rep) in p? {
            merged
                .entry(k)
                .and_modify(|r| r.labeled_count += rep.labeled_count)
                .or_insert(rep);
        }
    }
    Ok(merged.into_values().collect())
}

fn dfs_first(
    spec: &EnumSpec,
    opts: &[Vec<(Target, Color)>],
    st: &mut State,
    out: &mut BTreeMap<String, ClassRep>,
    leaves: &AtomicU64,
) -> Result<(), GraphError> {
    let (t1, c1) = opts[0][0];
    let (t2, c2) = opts[0][1];
    if t1 == t2 && !(spec.allow_mixed_double && c1 != c2) {
        return Ok(());
    }
    let infs = usize::from(t1 == Target::Inf) + usize::from(t2 == Target::Inf);
    if infs > 1 {
        return Ok(());
    }
    for t in [t1, t2] {
        if let Target::Aerial(u) = t {
            st.indeg[u] += 1;
            if spec.max_aerial_indegree.is_some_and(|m| st.indeg[u] > m) {
                return Ok(());
            }
        }
    }
    st.edges.push(Edge { src: 0, tgt: t1, color: c1 });
    st.edges.push(Edge { src: 0, tgt: t2, color: c2 });
    st.infs = infs;
    dfs(spec, opts, 1, st, out, leaves)
}

/// `Q_{n,2}` (uncolored) or `Q^{(2)}_{n,2}` (colored): out-degree 2, no edge
/// to `inf`, no double edges.
pub fn enumerate_q_n2(n: usize, colored: bool) -> Result<Vec<ClassRep>, GraphError> {
    enumerate(&EnumSpec::new(n, 2, colored))
}
