//! Exact linear algebra over the rationals.
//!
//! Rows are scaled to primitive integer vectors and eliminated fraction-free;
//! rationals only reappear when the null space basis is read off.

use crate::rational::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn primitive(row: &[Q]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in row {
        l = l.lcm(x.denom());
    }
    let mut v: Vec<BigInt> = row.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    normalize(&mut v);
    v
}

fn normalize(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// Row echelon data: the reduced rows and their pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right null space, one vector per free column, with a 1
    /// in that column.
    pub fn null_space(&self) -> Vec<Vec<Q>> {
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in self.pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (r, &c) in self.pivots.iter().enumerate() {
                let a = &self.rows[r][free];
                if !a.is_zero() {
                    v[c] = -Q::new(a.clone(), self.rows[r][c].clone());
                }
            }
            out.push(v);
        }
        out
    }
}

/// Fully reduced row echelon form with primitive integer rows.
pub fn echelon(rows: &[Vec<Q>], cols: usize) -> Echelon {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols);
            primitive(r)
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        // pick the row with the smallest nonzero entry in column c
        let Some(p) = (rank..m.len())
            .filter(|&r| !m[r][c].is_zero())
            .min_by_key(|&r| m[r][c].abs())
        else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let g = piv[c].gcd(&row[c]);
            let a = &piv[c] / &g;
            let b = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(&piv) {
                *x = &*x * &a - y * &b;
            }
            normalize(row);
        }
        if m[rank][c].is_negative() {
            for x in m[rank].iter_mut() {
                *x = -&*x;
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    Echelon {
        rows: m,
        pivots,
        cols,
    }
}

pub fn rank(rows: &[Vec<Q>], cols: usize) -> usize {
    echelon(rows, cols).rank()
}

/// Right null space of the matrix with the given rows.
pub fn null_space(rows: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    echelon(rows, cols).null_space()
}
