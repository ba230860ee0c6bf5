use crate::error::GraphError;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Plus,
    Minus,
    Uncolored,
}

impl Color {
    fn symbol(self) -> char {
        match self {
            Color::Plus => '+',
            Color::Minus => '-',
            Color::Uncolored => '.',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Aerial(usize),
    Ground(usize),
    Inf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: usize,
    pub tgt: Target,
    pub color: Color,
}

/// Graphs whose weight and operator follow a dedicated rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Special {
    /// One aerial vertex with a loop edge: the operator is a trace of `ad`.
    SmallLoop,
}

/// An admissible graph. Edges are grouped by source in increasing order;
/// within a source the order is the semantic ordered pair `(e^1, e^2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    pub n1: usize,
    pub n2: usize,
    pub edges: Vec<Edge>,
    pub special: Option<Special>,
}

/// The small loop: edge to the ground function (color minus) first, then
/// the loop edge, whose label runs over the whole basis.
pub fn small_loop() -> Graph {
    Graph {
        n1: 1,
        n2: 1,
        edges: vec![
            Edge {
                src: 0,
                tgt: Target::Ground(0),
                color: Color::Minus,
            },
            Edge {
                src: 0,
                tgt: Target::Aerial(0),
                color: Color::Uncolored,
            },
        ],
        special: Some(Special::SmallLoop),
    }
}

impl Graph {
    /// The graph with no aerial vertices.
    pub fn empty(n2: usize) -> Self {
        Self {
            n1: 0,
            n2,
            edges: Vec::new(),
            special: None,
        }
    }

    pub fn new(n1: usize, n2: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_by_key(|e| e.src);
        Self {
            n1,
            n2,
            edges,
            special: None,
        }
    }

    /// Indices into `edges` of the edges leaving `v`, in order.
    pub fn out_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&k| self.edges[k].src == v).collect()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.tgt == Target::Aerial(v) && e.src != v)
            .count()
    }

    /// Number of edges landing on ground vertex `g`.
    pub fn ground_degree(&self, g: usize) -> usize {
        self.edges.iter().filter(|e| e.tgt == Target::Ground(g)).count()
    }

    pub fn inf_edge(&self) -> Option<usize> {
        self.edges.iter().position(|e| e.tgt == Target::Inf)
    }

    pub fn has_inf(&self) -> bool {
        self.inf_edge().is_some()
    }

    pub fn is_colored(&self) -> bool {
        self.edges.iter().any(|e| e.color != Color::Uncolored)
    }

    /// `2 n1 + n2 - 2`, the dimension of the configuration space.
    pub fn config_dim(&self) -> i64 {
        2 * self.n1 as i64 + self.n2 as i64 - 2
    }

    /// Checks the admissibility rules. Same-target edges of different colors
    /// pass only with `allow_mixed_double`.
    pub fn validate(&self, allow_mixed_double: bool) -> Result<(), GraphError> {
        let bad = |m: String| Err(GraphError::Inadmissible(m));
        if self.config_dim() < 0 {
            return bad("2 n1 + n2 - 2 < 0".into());
        }
        if self.edges.windows(2).any(|w| w[0].src > w[1].src) {
            return bad("edges are not grouped by source".into());
        }
        let mut infs = 0;
        for (k, e) in self.edges.iter().enumerate() {
            if e.src >= self.n1 {
                return bad(format!("edge {} leaves a non-aerial vertex", k + 1));
            }
            match e.tgt {
                Target::Aerial(v) if v >= self.n1 => {
                    return bad(format!("edge {} targets a missing vertex", k + 1))
                }
                Target::Aerial(v) if v == e.src && self.special != Some(Special::SmallLoop) => {
                    return bad(format!("edge {} is a loop", k + 1))
                }
                Target::Ground(g) if g >= self.n2 => {
                    return bad(format!("edge {} targets a missing ground vertex", k + 1))
                }
                Target::Inf => {
                    infs += 1;
                    if e.color != Color::Minus {
                        return bad("the edge to inf must be colored minus".into());
                    }
                }
                _ => {}
            }
        }
        if infs > 1 {
            return bad("more than one edge to inf".into());
        }
        let colored = self.edges.iter().any(|e| e.color != Color::Uncolored);
        let uncolored_non_special = self.edges.iter().any(|e| {
            e.color == Color::Uncolored
                && !(self.special == Some(Special::SmallLoop) && e.tgt == Target::Aerial(e.src))
        });
        if colored && uncolored_non_special {
            return bad("mixes colored and uncolored edges".into());
        }
        for (a, e) in self.edges.iter().enumerate() {
            for f in &self.edges[a + 1..] {
                if e.src == f.src && e.tgt == f.tgt {
                    let same_color = e.color == f.color || e.color == Color::Uncolored;
                    if same_color || !allow_mixed_double {
                        return bad(format!("double edge from vertex {}", e.src + 1));
                    }
                }
            }
        }
        for v in 0..self.n1 {
            if self.out_edges(v).len() != 2 {
                return bad(format!("vertex {} does not have out-degree 2", v + 1));
            }
        }
        Ok(())
    }

    /// The graph with aerial vertex `v` renamed `perm[v]`, edges regrouped
    /// by new source with each vertex's ordered pair kept.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                src: perm[e.src],
                tgt: match e.tgt {
                    Target::Aerial(v) => Target::Aerial(perm[v]),
                    t => t,
                },
                color: e.color,
            })
            .collect();
        edges.sort_by_key(|e| e.src);
        Graph {
            n1: self.n1,
            n2: self.n2,
            edges,
            special: self.special,
        }
    }

    /// Lexicographically smallest wire string over aerial relabelings.
    pub fn canonical_form(&self) -> String {
        self.canonical_with_perm().0
    }

    /// Canonical string, a relabeling achieving it, and the number of
    /// relabelings fixing the graph (its automorphism count).
    pub fn canonical_with_perm(&self) -> (String, Vec<usize>, usize) {
        let mut perm: Vec<usize> = (0..self.n1).collect();
        let mut best: Option<(String, Vec<usize>)> = None;
        let mut autos = 0;
        let own = self.to_string();
        loop {
            let s = self.relabel(&perm).to_string();
            if s == own {
                autos += 1;
            }
            if best.as_ref().is_none_or(|(b, _)| s < *b) {
                best = Some((s, perm.clone()));
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let (s, p) = best.unwrap();
        (s, p, autos)
    }

    /// The canonical representative graph.
    pub fn canonical(&self) -> Graph {
        let (_, p, _) = self.canonical_with_perm();
        self.relabel(&p)
    }
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
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

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Aerial(v) => write!(f, "{}", v + 1),
            Target::Ground(g) => write!(f, "F{}", g + 1),
            Target::Inf => write!(f, "inf"),
        }
    }
}

impl fmt::Display for Graph {
    /// Wire format, e.g. `n1=2 n2=1 edges=(1,F1,+)(1,inf,-)(2,1,-)(2,F1,+)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n1={} n2={} edges=", self.n1, self.n2)?;
        for e in &self.edges {
            write!(f, "({},{},{})", e.src + 1, e.tgt, e.color.symbol())?;
        }
        if let Some(Special::SmallLoop) = self.special {
            write!(f, " special=small-loop")?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    /// Parses the wire format. Admissibility is not checked here.
    fn from_str(s: &str) -> Result<Self, GraphError> {
        let err = |m: &str| GraphError::Parse(format!("{m} in '{s}'"));
        let mut n1 = None;
        let mut n2 = None;
        let mut edges_src = None;
        let mut special = None;
        for tok in s.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| err("expected key=value"))?;
            match k {
                "n1" => n1 = Some(v.parse::<usize>().map_err(|_| err("bad n1"))?),
                "n2" => n2 = Some(v.parse::<usize>().map_err(|_| err("bad n2"))?),
                "edges" => edges_src = Some(v.to_string()),
                "special" if v == "small-loop" => special = Some(Special::SmallLoop),
                _ => return Err(err(&format!("unknown field '{k}'"))),
            }
        }
        let n1 = n1.ok_or_else(|| err("missing n1"))?;
        let n2 = n2.ok_or_else(|| err("missing n2"))?;
        let body = edges_src.unwrap_or_default();
        let mut edges = Vec::new();
        let mut rest = body.as_str();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
            let close = inner.find(')').ok_or_else(|| err("expected ')'"))?;
            let parts: Vec<&str> = inner[..close].split(',').collect();
            rest = &inner[close + 1..];
            if parts.len() != 3 {
                return Err(err("edge needs (source,target,color)"));
            }
            let src: usize = parts[0].parse().map_err(|_| err("bad edge source"))?;
            if src == 0 || src > n1 {
                return Err(err("edge source out of range"));
            }
            let tgt = if parts[1] == "inf" {
                Target::Inf
            } else if let Some(g) = parts[1].strip_prefix('F') {
                let g: usize = g.parse().map_err(|_| err("bad ground target"))?;
                if g == 0 || g > n2 {
                    return Err(err("ground target out of range"));
                }
                Target::Ground(g - 1)
            } else {
                let v: usize = parts[1].parse().map_err(|_| err("bad edge target"))?;
                if v == 0 || v > n1 {
                    return Err(err("edge target out of range"));
                }
                Target::Aerial(v - 1)
            };
            let color = match parts[2] {
                "+" => Color::Plus,
                "-" => Color::Minus,
                "." => Color::Uncolored,
                _ => return Err(err("bad color")),
            };
            edges.push(Edge {
                src: src - 1,
                tgt,
                color,
            });
        }
        if edges.windows(2).any(|w| w[0].src > w[1].src) {
            return Err(err("edges must be grouped by increasing source"));
        }
        Ok(Graph {
            n1,
            n2,
            edges,
            special,
        })
    }
}
