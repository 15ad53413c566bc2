//! One-sided (Hestenes) Jacobi SVD for dense complex matrices.
//!
//! Column pairs of a working copy of `A` are rotated until mutually
//! orthogonal; the accumulated rotations form `V`, the final column norms are
//! the singular values and the normalised columns form `U`. Jacobi keeps
//! small singular values accurate relative to `σ_max`, which is what the
//! rank decision needs.

use crate::error::{Error, Result};
use crate::matrix::{dot_conj, norm2, CMatrix, C64, ZERO};

const MAX_SWEEPS: usize = 80;

#[derive(Debug, Clone, PartialEq)]
pub struct SvdResult {
    pub u: CMatrix,
    /// Descending, non-negative.
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

impl SvdResult {
    pub fn sigma_max(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    /// `U Σ V†`
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.sigma.len();
        let us = CMatrix::from_fn(self.u.rows(), n, |i, j| self.u[(i, j)] * self.sigma[j]);
        &us * &self.v.adjoint()
    }
}

/// SVD of a square matrix.
pub fn svd_matrix(m: &CMatrix) -> Result<SvdResult> {
    assert!(m.is_square(), "svd_matrix expects a square matrix");
    let n = m.cols();
    if !m.is_finite() {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let mut w: Vec<Vec<C64>> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![ZERO; n];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();

    // inner products carry rounding of order n·ε, so a tighter target can stall
    let ortho_tol = f64::EPSILON * n as f64;
    // a column this small is zero to every rank test, and rotating it against
    // a parallel partner only shrinks it by ε per sweep down into subnormals
    let negligible = (f64::EPSILON * f64::EPSILON * m.frobenius_norm()).powi(2);
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let alpha: f64 = w[p].iter().map(|x| x.norm_sqr()).sum();
                let beta: f64 = w[q].iter().map(|x| x.norm_sqr()).sum();
                let gamma = dot_conj(&w[p], &w[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= ortho_tol * (alpha * beta).sqrt() || alpha.min(beta) <= negligible {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, phase, c, s);
                rotate(&mut v, p, q, phase, c, s);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            routine: "jacobi svd",
            iterations: MAX_SWEEPS,
        });
    }

    let norms: Vec<f64> = w.iter().map(|col| norm2(col)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: equal values keep the order the sweeps produced
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let floor = sigma_max * f64::EPSILON * n as f64;

    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for (k, &j) in order.iter().enumerate() {
        let s = sigma[k];
        let col = if s > floor {
            w[j].iter().map(|x| x / s).collect()
        } else {
            complete_basis(&u_cols, &w[j], n)
        };
        u_cols.push(col);
    }
    let v_cols: Vec<Vec<C64>> = order.iter().map(|&j| v[j].clone()).collect();

    Ok(SvdResult {
        u: CMatrix::from_columns(&u_cols),
        sigma,
        v: CMatrix::from_columns(&v_cols),
    })
}

fn rotate(cols: &mut [Vec<C64>], p: usize, q: usize, phase: C64, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (xp, xq) in cp.iter_mut().zip(cq.iter_mut()) {
        let a = *xp;
        let b = *xq * phase;
        *xp = a * c - b * s;
        *xq = a * s + b * c;
    }
}

/// Unit vector orthogonal to `basis`, starting from `hint` and falling back
/// to coordinate vectors.
fn complete_basis(basis: &[Vec<C64>], hint: &[C64], n: usize) -> Vec<C64> {
    let candidates = std::iter::once(hint.to_vec()).chain((0..n).map(|k| {
        let mut e = vec![ZERO; n];
        e[k] = C64::new(1.0, 0.0);
        e
    }));
    for mut x in candidates {
        let start = norm2(&x);
        if start == 0.0 {
            continue;
        }
        for _ in 0..2 {
            for b in basis {
                let proj = dot_conj(b, &x);
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi -= proj * bi;
                }
            }
        }
        let len = norm2(&x);
        if len > 1e-3 * start {
            return x.into_iter().map(|xi| xi / len).collect();
        }
    }
    unreachable!("an orthonormal set of fewer than n vectors always admits a completion")
}
