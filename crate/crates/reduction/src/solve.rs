use crate::error::ReductionError;
use crate::kernel::{Certificate, SymMatrix};
use calculus::{ReductionDifferential, SymPoly, WeightBook};
use lie_core::linalg::{null_space, rank};
use lie_core::{SplitData, Q};
use num_traits::Zero;
use poly::{monomials_up_to, Ambient, Mono, Poly};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Which reduction system is solved.
#[derive(Clone, Debug, PartialEq)]
pub enum Variant {
    /// `d^(eps) = sum_i eps^i d^(i)` on `S(q)[eps]`.
    Eps,
    /// `d = sum_i d^(i)` on `S(q)`.
    Plain,
    /// The plain system for the character `t lambda`.
    T(Q),
}

impl Variant {
    pub fn with_eps(&self) -> bool {
        matches!(self, Self::Eps)
    }

    /// The character at which the differential is restricted.
    pub fn character(&self, s: &SplitData) -> Vec<Q> {
        match self {
            Self::T(t) => s.scaled_lambda(t),
            _ => s.lambda.clone(),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Eps => write!(f, "eps"),
            Self::Plain => write!(f, "plain"),
            Self::T(t) => write!(f, "t={}", lie_core::rational::fmt_q(t)),
        }
    }
}

/// Dimensions of new elements by filtration degree (rows) and eps-order
/// (columns): `dims[k][m]` counts what `V_{<=k, <=m}` adds over
/// `V_{<=k-1, <=m}` and `V_{<=k, <=m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid(pub Vec<Vec<usize>>);

impl Grid {
    /// From cumulative dimensions `cum[k][m] = dim V_{<=k, <=m}`.
    pub fn from_cumulative(cum: &[Vec<usize>]) -> Self {
        let at = |k: isize, m: isize| -> isize {
            if k < 0 || m < 0 {
                0
            } else {
                cum[k as usize][m as usize] as isize
            }
        };
        let rows = cum
            .iter()
            .enumerate()
            .map(|(k, r)| {
                (0..r.len())
                    .map(|m| {
                        let (k, m) = (k as isize, m as isize);
                        let v = at(k, m) - at(k - 1, m) - at(k, m - 1) + at(k - 1, m - 1);
                        v.max(0) as usize
                    })
                    .collect()
            })
            .collect();
        Self(rows)
    }

    /// New elements per filtration degree at eps-order zero.
    pub fn per_degree(&self) -> Vec<usize> {
        self.0.iter().map(|r| r[0]).collect()
    }
}

impl fmt::Display for Grid {
    /// Degree rows separated by `/`, eps-orders by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

/// Renders a list as `[a,b,c]`.
pub fn fmt_list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// A solved reduction space on the ansatz `deg_q <= d`, `eps <= n`.
#[derive(Clone, Debug)]
pub struct ReductionBasis {
    pub split: SplitData,
    pub d: u32,
    pub n: u32,
    pub order: usize,
    pub variant: Variant,
    /// Echelonized against the ansatz monomials.
    pub elements: Vec<Poly>,
    pub certificate: Certificate,
    pub dims: Grid,
}

impl ReductionBasis {
    pub fn ambient(&self) -> Arc<Ambient> {
        Ambient::from_split(&self.split)
    }

    /// A basis of the solutions supported on `deg_q <= k`, `eps <= m`.
    pub fn within(&self, k: u32, m: u32) -> Vec<Poly> {
        let keep = |mono: &Mono, amb: &Ambient| mono.eps <= m && amb_deg_q(mono, amb) <= k;
        restrict_span(&self.elements, keep, &self.ambient())
    }
}

fn amb_deg_q(m: &Mono, amb: &Ambient) -> u32 {
    m.exps[amb.t..].iter().sum()
}

/// Combinations of `elems` whose monomials all satisfy `keep`.
pub fn restrict_span(
    elems: &[Poly],
    keep: impl Fn(&Mono, &Ambient) -> bool,
    amb: &Arc<Ambient>,
) -> Vec<Poly> {
    let mut rows: BTreeMap<&Mono, Vec<Q>> = BTreeMap::new();
    for (j, e) in elems.iter().enumerate() {
        for (m, c) in e.terms() {
            if !keep(m, amb) {
                rows.entry(m).or_insert_with(|| vec![Q::zero(); elems.len()])[j] = c.clone();
            }
        }
    }
    let rows: Vec<Vec<Q>> = rows.into_values().collect();
    null_space(&rows, elems.len())
        .into_iter()
        .map(|v| combine(elems, &v, amb))
        .collect()
}

fn combine(elems: &[Poly], v: &[Q], amb: &Arc<Ambient>) -> Poly {
    let mut out = Poly::zero(amb);
    for (c, e) in v.iter().zip(elems) {
        if !c.is_zero() {
            out += &e.scale(c);
        }
    }
    out
}

/// Dimension of the span of `polys`.
pub fn span_dim(polys: &[Poly]) -> usize {
    let mut index: BTreeMap<&Mono, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m).or_insert(next);
        }
    }
    let rows: Vec<Vec<Q>> = polys
        .iter()
        .map(|p| {
            let mut r = vec![Q::zero(); index.len()];
            for (m, c) in p.terms() {
                r[index[m]] = c.clone();
            }
            r
        })
        .collect();
    rank(&rows, index.len())
}

/// The ansatz monomials `q^alpha eps^m`, `|alpha| <= d`, `m <= n`.
pub fn ansatz(amb: &Arc<Ambient>, d: u32, n: u32) -> Vec<Poly> {
    let qvars: Vec<usize> = (amb.t..amb.n()).collect();
    let mut out = Vec::new();
    for m in 0..=n {
        for alpha in monomials_up_to(amb.n(), &qvars, d) {
            out.push(Poly::monomial(amb, Mono { exps: alpha, eps: m }, Q::from_integer(1.into())));
        }
    }
    out
}

/// The differential for `variant`, refusing orders that would truncate it
/// on the ansatz.
pub fn differential(
    s: &SplitData,
    d: u32,
    order: usize,
    variant: &Variant,
) -> Result<ReductionDifferential, ReductionError> {
    let needed = d as usize + 1;
    if order < needed {
        return Err(ReductionError::OrderTooSmall { order, needed });
    }
    Ok(ReductionDifferential::new(s, &variant.character(s), order)?)
}

/// Solves the reduction equations on the ansatz. The `eps`-free variants
/// ignore `n`.
pub fn solve_reduction(
    s: &SplitData,
    d: u32,
    n: u32,
    order: usize,
    variant: Variant,
    book: &WeightBook,
) -> Result<ReductionBasis, ReductionError> {
    let n = if variant.with_eps() { n } else { 0 };
    let needed = d as usize + 1;
    if order < needed {
        return Err(ReductionError::OrderTooSmall { order, needed });
    }
    let diff = cached_differential(s, order, &variant)?;
    let amb = Ambient::from_split(s);
    let cols = ansatz(&amb, d, n);
    let images: Vec<Vec<SymPoly>> = cols
        .par_iter()
        .map(|f| diff.apply(f, variant.with_eps()))
        .collect::<Result<_, _>>()?;

    let mut row_index: BTreeMap<(usize, Mono), usize> = BTreeMap::new();
    let mut matrix = SymMatrix {
        cols: cols.len(),
        rows: Vec::new(),
    };
    for (j, comps) in images.iter().enumerate() {
        for (c, comp) in comps.iter().enumerate() {
            for (m, l) in comp.terms() {
                let next = row_index.len();
                let r = *row_index.entry((c, m.clone())).or_insert(next);
                if r == matrix.rows.len() {
                    matrix.rows.push(BTreeMap::new());
                }
                matrix.rows[r].insert(j, l.clone());
            }
        }
    }
    let (kernel, certificate) = matrix.kernel(book).map_err(|reason| ReductionError::Indeterminate {
        degree: d,
        eps: n,
        reason,
    })?;
    let elements: Vec<Poly> = kernel.iter().map(|v| combine(&cols, v, &amb)).collect();
    let mut basis = ReductionBasis {
        split: s.clone(),
        d,
        n,
        order,
        variant,
        elements,
        certificate,
        dims: Grid(Vec::new()),
    };
    let cum: Vec<Vec<usize>> = (0..=d)
        .map(|k| (0..=n).map(|m| basis.within(k, m).len()).collect())
        .collect();
    basis.dims = Grid::from_cumulative(&cum);
    Ok(basis)
}

/// `d(f)` as its `t` components, symbolic in the untabulated weights.
pub fn apply_differential(
    f: &Poly,
    s: &SplitData,
    order: usize,
    variant: &Variant,
) -> Result<Vec<SymPoly>, ReductionError> {
    Ok(cached_differential(s, order, variant)?.apply(f, variant.with_eps())?)
}

/// Differentials are expensive at order 4 and are reused across membership
/// checks, so they are memoized per algebra, character and order.
fn cached_differential(
    s: &SplitData,
    order: usize,
    variant: &Variant,
) -> Result<Arc<ReductionDifferential>, ReductionError> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<ReductionDifferential>>>> = OnceLock::new();
    let character = variant.character(s);
    let key = format!("{:?}|{:?}|{order}", s, character);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap().get(&key) {
        return Ok(d.clone());
    }
    let d = Arc::new(ReductionDifferential::new(s, &character, order)?);
    cache.lock().unwrap().insert(key, d.clone());
    Ok(d)
}

/// Whether `d(f) = 0`: identically in the weights, or through `book`
/// (numeric values within five standard errors).
pub fn in_kernel(
    f: &Poly,
    s: &SplitData,
    order: usize,
    variant: &Variant,
    book: &WeightBook,
) -> Result<bool, ReductionError> {
    for comp in apply_differential(f, s, order, variant)? {
        if comp.is_zero() {
            continue;
        }
        match book.resolve(&comp)? {
            calculus::Evaluated::Exact(p) => {
                if !p.is_zero() {
                    return Ok(false);
                }
            }
            calculus::Evaluated::Numeric(p) => {
                if p.max_sigma(&Poly::zero(f.ambient())) > 5.0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

