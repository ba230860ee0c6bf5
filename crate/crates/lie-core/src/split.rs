use crate::algebra::LieAlgebra;
use crate::error::LieError;
use crate::rational::{qr, Q};
use num_traits::Zero;
use std::sync::Arc;

/// A split `g = h ⊕ q` with a character `λ` of `h` and the derived `ρ`.
#[derive(Clone, Debug)]
pub struct SplitData {
    pub algebra: Arc<LieAlgebra>,
    pub t: usize,
    pub lambda: Vec<Q>,
    pub rho: Vec<Q>,
}

impl SplitData {
    /// Validates subalgebra closure and the character property, then derives `ρ`.
    pub fn new(algebra: Arc<LieAlgebra>, t: usize, lambda: Vec<Q>) -> Result<Self, LieError> {
        let n = algebra.dim();
        if t > n {
            return Err(LieError::SplitTooLarge { t, dim: n });
        }
        if lambda.len() != t {
            return Err(LieError::CharacterLength {
                got: lambda.len(),
                expected: t,
            });
        }
        for i in 0..t {
            for j in 0..t {
                let mut lam = Q::zero();
                for (k, c) in algebra.bracket(i, j) {
                    if *k >= t {
                        return Err(LieError::NotSubalgebra { i, j, k: *k });
                    }
                    lam += c * &lambda[*k];
                }
                if !lam.is_zero() {
                    return Err(LieError::NotCharacter { i, j });
                }
            }
        }
        let rho = (0..t).map(|i| rho_of(&algebra, i)).collect();
        Ok(Self {
            algebra,
            t,
            lambda,
            rho,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Dimension `r = n - t` of the supplement `q`.
    pub fn r(&self) -> usize {
        self.dim() - self.t
    }

    /// `(λ + ρ)(H_i)`.
    pub fn lambda_plus_rho(&self, i: usize) -> Q {
        &self.lambda[i] + &self.rho[i]
    }

    /// Same split with a different character.
    pub fn with_lambda(&self, lambda: Vec<Q>) -> Result<Self, LieError> {
        Self::new(self.algebra.clone(), self.t, lambda)
    }

    /// Character `tλ`.
    pub fn scaled_lambda(&self, s: &Q) -> Vec<Q> {
        self.lambda.iter().map(|l| l * s).collect()
    }

    /// Adjoins a central `T` placed right after `h`, so the split stays
    /// contract-ordered: `H_1..H_t, T, Q_1..Q_r`.
    pub fn extend_central(&self) -> CentralExtension {
        let g = &*self.algebra;
        let n = g.dim();
        let mut name = String::from("T");
        while g.index_of(&name).is_some() {
            name.push('\'');
        }
        let ext = g.with_central(&name);
        let perm: Vec<usize> = (0..self.t)
            .chain(std::iter::once(n))
            .chain(self.t..n)
            .collect();
        let gt = Arc::new(ext.permuted(&perm));
        let t_index = self.t;
        let split = SplitData::new(gt.clone(), self.t + 1, vec![Q::zero(); self.t + 1])
            .expect("a central extension of a valid split is a valid split");
        let generators = (0..self.t).map(|i| (i, self.lambda[i].clone())).collect();
        CentralExtension {
            algebra: gt,
            split,
            t_index,
            generators,
        }
    }
}

/// `ρ(e_i) = -1/2 Tr ad(e_i)`.
fn rho_of(g: &LieAlgebra, i: usize) -> Q {
    -g.trace_ad(i) * qr(1, 2)
}

/// `g_T = g ⊕ ⟨T⟩` with `T` central, and the affine generator table.
///
/// Each `(i, c)` in `generators` stands for the ideal generator `H_i + c·T`.
/// The character on `h_T` itself is zero.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub algebra: Arc<LieAlgebra>,
    pub split: SplitData,
    /// Index of `T` in the extended basis.
    pub t_index: usize,
    pub generators: Vec<(usize, Q)>,
}
