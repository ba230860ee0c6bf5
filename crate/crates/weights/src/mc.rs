use crate::error::WeightError;
use crate::value::{WeightKind, WeightValue};
use graphs::{Color, Graph, Special, Target};
use lie_core::rational::zero;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Monte Carlo settings. The estimate depends on `(samples, seed, workers)`
/// only, never on thread scheduling.
#[derive(Clone, Debug, PartialEq)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub workers: u64,
    /// Scale of the Cauchy law on `log |z - c|` in the proposal.
    pub log_scale: f64,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            workers: 8,
            log_scale: 1.5,
        }
    }
}

/// The edge excluded from the wedge: the edge to `inf`, or the ground edge
/// of the small loop.
fn output_edge(g: &Graph) -> Option<usize> {
    if g.special == Some(Special::SmallLoop) {
        return g.edges.iter().position(|e| matches!(e.tgt, Target::Ground(_)));
    }
    g.inf_edge()
}

/// Number of one-forms in the wedge.
pub fn form_degree(g: &Graph) -> usize {
    g.edges.len() - output_edge(g).map_or(0, |_| 1)
}

/// Moving the output edge to the front of the edge order:
/// `(-1)^(edges preceding it)`.
pub fn inf_sign(g: &Graph) -> f64 {
    match output_edge(g) {
        Some(k) if k % 2 == 1 => -1.0,
        _ => 1.0,
    }
}

/// Gauge-fixed coordinates. Two ground points sit at 0 and 1 and every
/// aerial point is free. One ground point sits at 0 and the first aerial
/// point is `exp(i theta)`, `0 < theta < pi`.
struct Chart {
    n1: usize,
    ground: Vec<f64>,
    pinned: bool,
}

impl Chart {
    fn new(g: &Graph) -> Result<Self, WeightError> {
        match g.n2 {
            2 => Ok(Self {
                n1: g.n1,
                ground: vec![0.0, 1.0],
                pinned: false,
            }),
            1 => Ok(Self {
                n1: g.n1,
                ground: vec![0.0],
                pinned: true,
            }),
            n2 => Err(WeightError::GroundCount { n2 }),
        }
    }

    fn dim(&self) -> usize {
        2 * self.n1 - usize::from(self.pinned)
    }

    /// Positions and, per vertex, the derivatives `dz/dcoord` as
    /// `(coordinate index, value)` pairs; the pinned vertex has one.
    fn points(&self, x: &[f64], z: &mut Vec<Complex64>, dz: &mut Vec<Derivs>) {
        z.clear();
        dz.clear();
        for v in 0..self.n1 {
            if self.pinned && v == 0 {
                let p = Complex64::from_polar(1.0, x[0]);
                z.push(p);
                dz.push(Derivs::one(0, Complex64::i() * p));
            } else {
                let c = 2 * v - usize::from(self.pinned);
                z.push(Complex64::new(x[c], x[c + 1]));
                dz.push(Derivs::two(c, Complex64::new(1.0, 0.0), c + 1, Complex64::i()));
            }
        }
    }
}

#[derive(Clone, Copy)]
struct Derivs {
    len: usize,
    entries: [(usize, Complex64); 2],
}

impl Derivs {
    fn one(k: usize, d: Complex64) -> Self {
        Self {
            len: 1,
            entries: [(k, d), (0, Complex64::new(0.0, 0.0))],
        }
    }

    fn two(k1: usize, d1: Complex64, k2: usize, d2: Complex64) -> Self {
        Self {
            len: 2,
            entries: [(k1, d1), (k2, d2)],
        }
    }

    fn iter(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.entries[..self.len].iter().copied()
    }

    fn conj(&self) -> Self {
        let mut out = *self;
        for e in &mut out.entries {
            e.1 = e.1.conj();
        }
        out
    }
}

/// Adds `s * d arg(z_a - w)` to `row`, with `dw` the derivatives of `w`.
fn add_darg(row: &mut [f64], s: f64, u: Complex64, dza: &Derivs, dw: Option<&Derivs>) {
    let inv = u.inv();
    for (k, d) in dza.iter() {
        row[k] += s * (d * inv).im;
    }
    for (k, d) in dw.into_iter().flat_map(Derivs::iter) {
        row[k] -= s * (d * inv).im;
    }
}

/// Buffers reused across samples.
#[derive(Default)]
struct Scratch {
    m: Vec<f64>,
    z: Vec<Complex64>,
    dz: Vec<Derivs>,
}

/// The density of the wedge in the chart's coordinates at `x`: the
/// determinant of the one-forms' coefficient rows.
pub fn integrand_at(g: &Graph, x: &[f64]) -> Result<f64, WeightError> {
    let chart = Chart::new(g)?;
    Ok(density(g, &chart, x, &mut Scratch::default()))
}

fn density(g: &Graph, chart: &Chart, x: &[f64], s: &mut Scratch) -> f64 {
    let dim = chart.dim();
    let skip = output_edge(g);
    chart.points(x, &mut s.z, &mut s.dz);
    let (z, dz) = (&s.z, &s.dz);
    s.m.clear();
    s.m.resize(dim * dim, 0.0);
    let mut r = 0;
    for (k, e) in g.edges.iter().enumerate() {
        if Some(k) == skip {
            continue;
        }
        let row = &mut s.m[r * dim..(r + 1) * dim];
        let a = e.src;
        match e.tgt {
            Target::Aerial(b) if b == a => {
                add_darg(row, 1.0, z[a], &dz[a], None);
            }
            Target::Aerial(b) => {
                let sign = if e.color == Color::Minus { -1.0 } else { 1.0 };
                add_darg(row, 1.0, z[a] - z[b], &dz[a], Some(&dz[b]));
                add_darg(row, sign, z[a] - z[b].conj(), &dz[a], Some(&dz[b].conj()));
            }
            Target::Ground(gv) => {
                if e.color == Color::Minus {
                    // d arg of a minus edge to the real line vanishes
                    return 0.0;
                }
                add_darg(row, 2.0, z[a] - chart.ground[gv], &dz[a], None);
            }
            Target::Inf => unreachable!("the edge to inf is never in the wedge"),
        }
        r += 1;
    }
    determinant(&mut s.m, dim)
}

/// Gaussian elimination with partial pivoting, in place.
fn determinant(m: &mut [f64], n: usize) -> f64 {
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| m[i * n + c].abs().total_cmp(&m[j * n + c].abs()))
            .unwrap();
        let pivot = m[p * n + c];
        if pivot == 0.0 {
            return 0.0;
        }
        if p != c {
            for k in 0..n {
                m.swap(p * n + k, c * n + k);
            }
            det = -det;
        }
        det *= pivot;
        for i in (c + 1)..n {
            let f = m[i * n + c] / pivot;
            if f != 0.0 {
                for k in c..n {
                    m[i * n + k] -= f * m[c * n + k];
                }
            }
        }
    }
    det
}

/// Proposal: each free aerial point is `c + exp(L) e^{i alpha}` with `c`
/// a ground point chosen uniformly, `L` Cauchy and `alpha` uniform on
/// `(0, pi)`; the pinned angle is uniform.
struct Proposal<'a> {
    chart: &'a Chart,
    scale: f64,
}

impl Proposal<'_> {
    fn draw(&self, rng: &mut ChaCha8Rng, x: &mut [f64]) -> f64 {
        let mut density = 1.0;
        for v in 0..self.chart.n1 {
            if self.chart.pinned && v == 0 {
                x[0] = PI * rng.gen::<f64>();
                density /= PI;
                continue;
            }
            let centers = &self.chart.ground;
            let c = centers[rng.gen_range(0..centers.len())];
            let l = self.scale * (PI * (rng.gen::<f64>() - 0.5)).tan();
            let alpha = PI * rng.gen::<f64>();
            let z = Complex64::new(c, 0.0) + Complex64::from_polar(l.exp(), alpha);
            let k = 2 * v - usize::from(self.chart.pinned);
            x[k] = z.re;
            x[k + 1] = z.im;
            let mix: f64 = centers
                .iter()
                .map(|&c| {
                    let r = (z - c).norm();
                    let t = r.ln() / self.scale;
                    1.0 / (PI * self.scale * (1.0 + t * t)) / (PI * r * r)
                })
                .sum::<f64>()
                / centers.len() as f64;
            density *= mix;
        }
        density
    }
}

/// Running mean and sum of squared deviations, merged pairwise.
#[derive(Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, v: f64) {
        self.n += 1;
        let d = v - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (v - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * o.n as f64 / n as f64,
            m2: self.m2 + o.m2 + d * d * (self.n as f64) * (o.n as f64) / n as f64,
        }
    }
}

/// Monte Carlo estimate of the normalized weight integral.
pub fn omega_numeric(g: &Graph, cfg: &McConfig) -> Result<WeightValue, WeightError> {
    if cfg.samples == 0 || cfg.workers == 0 {
        return Err(WeightError::NoSamples);
    }
    g.validate(true)?;
    let canonical = g.canonical_form();
    let chart = Chart::new(g)?;
    let dim = chart.dim();
    if form_degree(g) != dim {
        return Ok(WeightValue::exact(canonical, zero(), "dimension"));
    }
    if g.n1 == 0 {
        return Ok(WeightValue::exact(canonical, lie_core::rational::one(), "empty"));
    }
    let proposal = Proposal {
        chart: &chart,
        scale: cfg.log_scale,
    };
    let per = cfg.samples / cfg.workers;
    let extra = cfg.samples % cfg.workers;
    let parts: Vec<Moments> = (0..cfg.workers)
        .into_par_iter()
        .map(|w| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(w);
            let count = per + u64::from(w < extra);
            let mut x = vec![0.0; dim];
            let mut scratch = Scratch::default();
            let mut m = Moments::default();
            for _ in 0..count {
                let p = proposal.draw(&mut rng, &mut x);
                let f = density(g, &chart, &x, &mut scratch);
                let v = f / p;
                // Proposals at |log r| beyond f64 range carry no mass.
                m.push(if v.is_finite() { v } else { 0.0 });
            }
            m
        })
        .collect();
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let norm = inf_sign(g) / (2.0 * PI).powi(dim as i32);
    let var = if total.n > 1 { total.m2 / (total.n - 1) as f64 } else { 0.0 };
    Ok(WeightValue {
        graph: canonical,
        kind: WeightKind::Numeric {
            estimate: norm * total.mean,
            stderr: norm.abs() * (var / total.n as f64).sqrt(),
            samples: cfg.samples,
            seed: cfg.seed,
        },
    })
}
