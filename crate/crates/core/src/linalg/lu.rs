//! LU factorisation with partial pivoting.

use crate::matrix::{CMatrix, C64, ONE};

pub(crate) struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    /// Factorise; zero pivots are replaced by `pivot_floor` so that the
    /// factorisation can be used for inverse iteration on singular shifts.
    pub(crate) fn new(m: &CMatrix, pivot_floor: f64) -> Self {
        assert!(m.is_square());
        let n = m.rows();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&a, &b| lu[(a, k)].norm().total_cmp(&lu[(b, k)].norm()))
                .unwrap_or(k);
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            if lu[(k, k)].norm() <= pivot_floor {
                lu[(k, k)] = C64::new(pivot_floor.max(f64::MIN_POSITIVE), 0.0);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let t = lu[(k, j)];
                    lu[(i, j)] -= f * t;
                }
            }
        }
        Self { lu, perm, sign }
    }

    pub(crate) fn determinant(&self) -> C64 {
        let n = self.lu.rows();
        (0..n).fold(ONE * self.sign, |acc, i| acc * self.lu[(i, i)])
    }

    pub(crate) fn solve(&self, b: &[C64]) -> Vec<C64> {
        let n = self.lu.rows();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let t = self.lu[(i, j)] * x[j];
                x[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = self.lu[(i, j)] * x[j];
                x[i] -= t;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }
}

/// Determinant by LU with partial pivoting.
pub fn determinant_matrix(m: &CMatrix) -> C64 {
    Lu::new(m, 0.0).determinant()
}
