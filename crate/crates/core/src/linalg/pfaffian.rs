//! Pfaffians of complex skew-symmetric matrices.
//!
//! Small matrices use the row expansion
//! `Pf(A) = Σ_j (−1)^{j+1} a_{0j} Pf(A_{0̂ĵ})`; larger ones are reduced to
//! skew-symmetric tridiagonal form by Householder congruences
//! `A ← H A Hᵀ`, after which `Pf(T) = t₀₁ t₂₃ t₄₅ …` and each reflection
//! contributes a factor `det H = −1`.

use crate::matrix::{norm2, CMatrix, C64, ONE, ZERO};

/// Largest dimension handled by direct expansion.
pub const EXPANSION_MAX: usize = 8;

pub fn pfaffian_matrix(m: &CMatrix) -> C64 {
    assert!(m.is_square() && m.rows().is_multiple_of(2));
    if m.rows() <= EXPANSION_MAX {
        pfaffian_expansion(m)
    } else {
        pfaffian_householder(m)
    }
}

pub fn pfaffian_expansion(m: &CMatrix) -> C64 {
    let idx: Vec<usize> = (0..m.rows()).collect();
    expand(m, &idx)
}

fn expand(m: &CMatrix, idx: &[usize]) -> C64 {
    match idx.len() {
        0 => ONE,
        2 => m[(idx[0], idx[1])],
        _ => {
            let first = idx[0];
            let mut total = ZERO;
            for k in 1..idx.len() {
                let a = m[(first, idx[k])];
                if a == ZERO {
                    continue;
                }
                let rest: Vec<usize> = idx[1..].iter().copied().filter(|&i| i != idx[k]).collect();
                let term = a * expand(m, &rest);
                if k % 2 == 1 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

pub fn pfaffian_householder(m: &CMatrix) -> C64 {
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = 1.0;
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let tail: f64 = norm2(&x[1..]);
        if tail == 0.0 {
            continue;
        }
        let xnorm = norm2(&x);
        let phase = if x[0] == ZERO { ONE } else { x[0] / x[0].norm() };
        let mut v = x;
        v[0] += phase * xnorm;
        let vnorm = norm2(&v);
        for vi in v.iter_mut() {
            *vi /= vnorm;
        }
        // H = I − 2vv† on indices k+1..n; A ← H A Hᵀ
        for j in 0..n {
            let dot: C64 = (k + 1..n).map(|i| v[i - k - 1].conj() * a[(i, j)]).sum();
            for i in k + 1..n {
                let t = 2.0 * v[i - k - 1] * dot;
                a[(i, j)] -= t;
            }
        }
        for i in 0..n {
            // (A Hᵀ)_{ij} = Σ_l A_{il} H_{jl} = A_{ij} − 2 v_j Σ_l A_{il} conj(v_l)
            let dot: C64 = (k + 1..n).map(|l| a[(i, l)] * v[l - k - 1].conj()).sum();
            for j in k + 1..n {
                let t = 2.0 * dot * v[j - k - 1];
                a[(i, j)] -= t;
            }
        }
        sign = -sign;
    }
    (0..n / 2).fold(ONE * sign, |acc, i| acc * a[(2 * i, 2 * i + 1)])
}
