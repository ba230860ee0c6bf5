use lie_core::rational::{binom, inv_factorial, q, Q};
use num_traits::{One, Zero};

/// Truncated univariate power series `Σ c_k x^k`, `k < len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series(pub Vec<Q>);

impl Series {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.len().min(other.len());
        let mut out = vec![Q::zero(); n];
        for (i, a) in self.0.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Series(out)
    }

    /// `log(1 + u)` for a series `u` with zero constant term.
    pub fn log1p(&self) -> Series {
        assert!(self.0[0].is_zero());
        let n = self.len();
        let mut out = Series(vec![Q::zero(); n]);
        let mut pw = self.clone();
        for k in 1..n {
            let sign = if k % 2 == 1 { Q::one() } else { -Q::one() };
            let c = sign / q(k as i64);
            for (o, p) in out.0.iter_mut().zip(&pw.0) {
                *o += &c * p;
            }
            pw = pw.mul(self);
        }
        out
    }
}

/// Coefficients `a_k` with `log(sinh(x/2)/(x/2)) = Σ_{k≥1} a_k x^{2k}`,
/// for `k = 1..=kmax`.
pub fn log_sinhc_coeffs(kmax: usize) -> Vec<Q> {
    let n = 2 * kmax + 1;
    // sinh(x/2)/(x/2) = Σ_k x^{2k} / (4^k (2k+1)!)
    let mut u = vec![Q::zero(); n];
    for k in 1..=kmax {
        let four_k = lie_core::rational::pow(&q(4), k as u32);
        u[2 * k] = inv_factorial(2 * k + 1) / four_k;
    }
    let l = Series(u).log1p();
    (1..=kmax).map(|k| l.0[2 * k].clone()).collect()
}

/// Binomial series coefficient helper: `(1 + u)^{1/2} = Σ binom(1/2, k) u^k`.
pub(crate) fn sqrt_coeff(k: usize) -> Q {
    binom(&lie_core::rational::qr(1, 2), k)
}
