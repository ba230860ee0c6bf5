use crate::error::LieError;
use crate::rational::{fmt_q, Q};
use num_traits::Zero;
use std::fmt;

/// A Lie algebra `[e_i, e_j] = Σ_k c^k_{ij} e_k` with sparse rational constants.
///
/// Indices are 0-based in the API; the text format and reports use 1-based
/// indices or basis names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    /// `brackets[i * n + j]` lists the nonzero `(k, c^k_{ij})`, sorted by `k`.
    brackets: Vec<Vec<(usize, Q)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `c^k_{ij} + c^k_{ji} != 0`.
    Antisymmetry { i: usize, j: usize, k: usize },
    /// Jacobi residual on the triple `(i, j, k)`, component `l`.
    Jacobi { i: usize, j: usize, k: usize, l: usize },
}

/// One failed axiom instance with its nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub residual: Q,
}

impl LieAlgebra {
    /// The abelian algebra on the given basis names.
    pub fn abelian(labels: Vec<String>) -> Self {
        let n = labels.len();
        Self {
            labels,
            brackets: vec![Vec::new(); n * n],
        }
    }

    /// Abelian algebra with default names `e1..en`.
    pub fn abelian_dim(n: usize) -> Self {
        Self::abelian((1..=n).map(|i| format!("e{i}")).collect())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// Sets `[e_i, e_j]` and its antisymmetric partner. Overwrites silently.
    pub fn set_bracket(&mut self, i: usize, j: usize, rhs: &[(usize, Q)]) -> Result<(), LieError> {
        let n = self.dim();
        for &idx in [i, j].iter().chain(rhs.iter().map(|(k, _)| k)) {
            if idx >= n {
                return Err(LieError::IndexOutOfRange { index: idx, dim: n });
            }
        }
        let mut v: Vec<(usize, Q)> = Vec::new();
        for (k, c) in rhs {
            match v.iter_mut().find(|(kk, _)| kk == k) {
                Some(slot) => slot.1 += c,
                None => v.push((*k, c.clone())),
            }
        }
        v.retain(|(_, c)| !c.is_zero());
        v.sort_by_key(|(k, _)| *k);
        if i == j {
            if !v.is_empty() {
                return Err(LieError::SelfBracket { i });
            }
            return Ok(());
        }
        let neg: Vec<(usize, Q)> = v.iter().map(|(k, c)| (*k, -c.clone())).collect();
        self.brackets[i * n + j] = v;
        self.brackets[j * n + i] = neg;
        Ok(())
    }

    /// Sets a single constant without touching the partner. Used to build
    /// deliberately broken algebras in tests and diagnostics.
    pub fn set_constant_raw(&mut self, i: usize, j: usize, k: usize, c: Q) {
        let n = self.dim();
        let v = &mut self.brackets[i * n + j];
        v.retain(|(kk, _)| *kk != k);
        if !c.is_zero() {
            v.push((k, c));
            v.sort_by_key(|(k, _)| *k);
        }
    }

    /// Nonzero components of `[e_i, e_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.brackets[i * self.dim() + j]
    }

    /// `c^k_{ij}`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> Q {
        self.bracket(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket_vec(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                for (k, c) in self.bracket(i, j) {
                    out[*k] += &a[i] * &b[j] * c;
                }
            }
        }
        out
    }

    /// True when every structure constant vanishes.
    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(|v| v.is_empty())
    }

    /// Matrix of `ad_{e_i}`; column `j` holds the coordinates of `[e_i, e_j]`.
    pub fn adjoint_matrix(&self, i: usize) -> Vec<Vec<Q>> {
        let n = self.dim();
        let mut m = vec![vec![Q::zero(); n]; n];
        for j in 0..n {
            for (k, c) in self.bracket(i, j) {
                m[*k][j] = c.clone();
            }
        }
        m
    }

    /// `Tr ad_{e_i} = Σ_j c^j_{ij}`.
    pub fn trace_ad(&self, i: usize) -> Q {
        (0..self.dim()).map(|j| self.c(i, j, j)).sum()
    }

    /// Every antisymmetry and Jacobi violation, in a deterministic order.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let r = self.c(i, j, k) + self.c(j, i, k);
                    if !r.is_zero() {
                        out.push(Violation {
                            kind: ViolationKind::Antisymmetry { i, j, k },
                            residual: r,
                        });
                    }
                }
            }
        }
        // Σ_m c^m_{ij} c^l_{mk} + c^m_{jk} c^l_{mi} + c^m_{ki} c^l_{mj}
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut res = vec![Q::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, cm) in self.bracket(a, b) {
                            for (l, cl) in self.bracket(*m, c) {
                                res[*l] += cm * cl;
                            }
                        }
                    }
                    for (l, r) in res.into_iter().enumerate() {
                        if !r.is_zero() {
                            out.push(Violation {
                                kind: ViolationKind::Jacobi { i, j, k, l },
                                residual: r,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Human-readable violation line using basis names.
    pub fn describe(&self, v: &Violation) -> String {
        let name = |i: usize| self.labels[i].as_str();
        match v.kind {
            ViolationKind::Antisymmetry { i, j, k } => format!(
                "antisymmetry ({},{};{}) residual={}",
                name(i),
                name(j),
                name(k),
                fmt_q(&v.residual)
            ),
            ViolationKind::Jacobi { i, j, k, l } => format!(
                "jacobi ({},{},{};{}) residual={}",
                name(i),
                name(j),
                name(k),
                name(l),
                fmt_q(&v.residual)
            ),
        }
    }

    /// Appends a central basis vector named `name`.
    pub fn with_central(&self, name: &str) -> LieAlgebra {
        let n = self.dim();
        let mut labels = self.labels.clone();
        labels.push(name.to_string());
        let m = n + 1;
        let mut brackets = vec![Vec::new(); m * m];
        for i in 0..n {
            for j in 0..n {
                brackets[i * m + j] = self.brackets[i * n + j].clone();
            }
        }
        LieAlgebra { labels, brackets }
    }

    /// Reorders the basis: new index `p` is old index `perm[p]`.
    pub fn permuted(&self, perm: &[usize]) -> LieAlgebra {
        let n = self.dim();
        assert_eq!(perm.len(), n);
        let mut inv = vec![0; n];
        for (p, &o) in perm.iter().enumerate() {
            inv[o] = p;
        }
        let labels = perm.iter().map(|&o| self.labels[o].clone()).collect();
        let mut brackets = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                let mut v: Vec<(usize, Q)> = self
                    .bracket(perm[a], perm[b])
                    .iter()
                    .map(|(k, c)| (inv[*k], c.clone()))
                    .collect();
                v.sort_by_key(|(k, _)| *k);
                brackets[a * n + b] = v;
            }
        }
        LieAlgebra { labels, brackets }
    }
}

impl fmt::Display for LieAlgebra {
    /// Renders in the text format accepted by [`crate::parse_algebra`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim())?;
        writeln!(f, "basis {}", self.labels.join(" "))?;
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let b = self.bracket(i, j);
                if b.is_empty() {
                    continue;
                }
                let rhs: Vec<String> = b
                    .iter()
                    .map(|(k, c)| format!("{} {}", fmt_q(c), self.labels[*k]))
                    .collect();
                writeln!(
                    f,
                    "bracket {} {} = {}",
                    self.labels[i],
                    self.labels[j],
                    rhs.join(" ")
                )?;
            }
        }
        Ok(())
    }
}
