//! Eigenvalues of dense complex matrices: Householder reduction to upper
//! Hessenberg form followed by single-shift QR iteration with Wilkinson
//! shifts and deflation.
//!
//! A zero eigenvalue of algebraic multiplicity `m > 1` sits in a Jordan
//! block that QR can only resolve to `O(ε^{1/m})`. The multiplicity is read
//! off the stabilised numerical ranks of `A, A², A³, …` and the `m`
//! eigenvalues nearest zero are replaced by their centroid, which is
//! well-conditioned even when the individual values are not.
//!
//! High powers push small but genuine eigenvalues under the rank threshold,
//! so the rank estimate is only accepted when the candidate cluster looks
//! like a perturbed zero block: every elementary symmetric function of the
//! cluster must be at the tolerance level. A pair `±λ` fails through `λ²`.

use crate::error::{Error, Result};
use crate::linalg::lu::Lu;
use crate::linalg::svd::svd_matrix;
use crate::matrix::{norm2, CMatrix, C64, ZERO};

const EPS: f64 = f64::EPSILON;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Sorted by magnitude descending, then by argument.
    pub lambdas: Vec<C64>,
    /// Algebraic multiplicity of the zero eigenvalue.
    pub zero_multiplicity: usize,
    /// `‖A q − λ q‖` for the inverse-iteration eigenvector `q` of each λ.
    pub residuals: Vec<f64>,
}

impl EigenResult {
    pub fn max_abs(&self) -> f64 {
        self.lambdas.iter().map(|l| l.norm()).fold(0.0, f64::max)
    }
}

/// Eigenvalues of `m`, with the zero-cluster multiplicity decided at
/// relative rank tolerance `rel_tol`.
pub fn eigen_matrix(m: &CMatrix, rel_tol: f64) -> Result<EigenResult> {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return Ok(EigenResult {
            lambdas: vec![],
            zero_multiplicity: 0,
            residuals: vec![],
        });
    }
    let mut lambdas = hessenberg_qr(m)?;
    let zero_multiplicity = confirmed_multiplicity(m, rel_tol, &lambdas)?;

    if zero_multiplicity > 0 {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| lambdas[a].norm().total_cmp(&lambdas[b].norm()));
        let cluster = &idx[..zero_multiplicity];
        let centroid: C64 = cluster.iter().map(|&i| lambdas[i]).sum::<C64>() / zero_multiplicity as f64;
        for &i in cluster {
            lambdas[i] = centroid;
        }
    }

    lambdas.sort_by(|a, b| b.norm().total_cmp(&a.norm()).then_with(|| a.arg().total_cmp(&b.arg())));
    let residuals = lambdas.iter().map(|&l| eigen_residual(m, l)).collect();
    Ok(EigenResult {
        lambdas,
        zero_multiplicity,
        residuals,
    })
}

/// `N − rank(A^k)` once the rank sequence stops decreasing, cut back until
/// the cluster of that many eigenvalues nearest zero is consistent with a
/// zero block. The rank of `A^k` is taken against
/// `rel_tol · σ_max(A)^k · N`.
pub fn zero_multiplicity(m: &CMatrix, rel_tol: f64) -> Result<usize> {
    assert!(m.is_square());
    if m.rows() == 0 {
        return Ok(0);
    }
    confirmed_multiplicity(m, rel_tol, &hessenberg_qr(m)?)
}

fn confirmed_multiplicity(m: &CMatrix, rel_tol: f64, lambdas: &[C64]) -> Result<usize> {
    let (mut count, scale) = rank_multiplicity(m, rel_tol)?;
    if count == 0 || scale == 0.0 {
        return Ok(count);
    }
    let mut near: Vec<C64> = lambdas.iter().map(|l| l / scale).collect();
    near.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    let tol = rel_tol * m.rows() as f64;
    while count > 0 && !is_null_cluster(&near[..count], tol) {
        count -= 1;
    }
    Ok(count)
}

/// Whether `Π (x − μ_i)` is `x^k` up to `tol` in every coefficient.
fn is_null_cluster(mu: &[C64], tol: f64) -> bool {
    let mut coeffs = vec![C64::new(1.0, 0.0)];
    for &x in mu {
        coeffs.push(ZERO);
        for j in (1..coeffs.len()).rev() {
            let prev = coeffs[j - 1];
            coeffs[j] -= x * prev;
        }
    }
    coeffs[1..].iter().all(|c| c.norm() <= tol)
}

/// Rank-of-powers estimate and `σ_max(A)`.
fn rank_multiplicity(m: &CMatrix, rel_tol: f64) -> Result<(usize, f64)> {
    let n = m.rows();
    let mut prev_rank = n;
    let mut power = m.clone();
    let mut scale = 1.0;
    for k in 1..=n {
        if k > 1 {
            power = &power * m;
        }
        let s = svd_matrix(&power)?;
        if k == 1 {
            scale = s.sigma_max();
        }
        if scale == 0.0 {
            prev_rank = 0;
            break;
        }
        let threshold = rel_tol * scale.powi(k as i32) * n as f64;
        let rank = s.sigma.iter().filter(|&&x| x > threshold).count();
        if rank == prev_rank || rank == 0 {
            prev_rank = rank;
            break;
        }
        prev_rank = rank;
    }
    Ok((n - prev_rank, scale))
}

/// Inverse iteration for an eigenvector of `λ`, returning `‖Aq − λq‖`.
fn eigen_residual(m: &CMatrix, lambda: C64) -> f64 {
    let n = m.rows();
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let shifted = CMatrix::from_fn(n, n, |i, j| if i == j { m[(i, j)] - lambda } else { m[(i, j)] });
    let lu = Lu::new(&shifted, EPS * scale);
    let mut q: Vec<C64> = (0..n)
        .map(|i| C64::new(1.0, 0.1 * i as f64) / (n as f64).sqrt())
        .collect();
    let mut best = f64::INFINITY;
    for _ in 0..4 {
        let x = lu.solve(&q);
        let len = norm2(&x);
        if !(len.is_finite() && len > 0.0) {
            break;
        }
        q = x.into_iter().map(|v| v / len).collect();
        let aq = m.mul_vec(&q);
        let r = aq
            .iter()
            .zip(&q)
            .map(|(a, x)| (a - lambda * x).norm_sqr())
            .sum::<f64>()
            .sqrt();
        best = best.min(r);
    }
    best
}

fn hessenberg(m: &CMatrix) -> CMatrix {
    let n = m.rows();
    let mut h = m.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = norm2(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0] == ZERO {
            C64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let mut v = x;
        v[0] += phase * xnorm;
        let vnorm = norm2(&v);
        if vnorm == 0.0 {
            continue;
        }
        for vi in v.iter_mut() {
            *vi /= vnorm;
        }
        // H ← (I − 2vv†) H
        for j in k..n {
            let dot: C64 = (k + 1..n).map(|i| v[i - k - 1].conj() * h[(i, j)]).sum();
            for i in k + 1..n {
                let t = 2.0 * v[i - k - 1] * dot;
                h[(i, j)] -= t;
            }
        }
        // H ← H (I − 2vv†)
        for i in 0..n {
            let dot: C64 = (k + 1..n).map(|j| h[(i, j)] * v[j - k - 1]).sum();
            for j in k + 1..n {
                let t = 2.0 * dot * v[j - k - 1].conj();
                h[(i, j)] -= t;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    h
}

fn eig2(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    (half_tr + root, half_tr - root)
}

fn hessenberg_qr(m: &CMatrix) -> Result<Vec<C64>> {
    let n = m.rows();
    let mut h = hessenberg(m);
    let hnorm = h.frobenius_norm();
    let mut eig = vec![ZERO; n];
    if hnorm == 0.0 {
        return Ok(eig);
    }
    let max_iter = 30 * n.max(1);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        // deflation search
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let mut tst = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if tst == 0.0 {
                tst = hnorm;
            }
            if sub <= EPS * tst || sub <= EPS * EPS * hnorm {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        if l + 1 == hi {
            let (e1, e2) = eig2(h[(l, l)], h[(l, hi)], h[(hi, l)], h[(hi, hi)]);
            eig[l] = e1;
            eig[hi] = e2;
            if l == 0 {
                break;
            }
            hi = l - 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > max_iter {
            return Err(Error::ConvergenceFailure {
                routine: "hessenberg qr",
                iterations: total,
            });
        }
        let mu = if iter.is_multiple_of(10) {
            // exceptional shift
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.25 * h[(hi - 1, hi - 2)].norm())
        } else {
            let d = h[(hi, hi)];
            let (e1, e2) = eig2(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], d);
            if (e1 - d).norm() <= (e2 - d).norm() {
                e1
            } else {
                e2
            }
        };
        qr_step(&mut h, l, hi, mu);
    }
    Ok(eig)
}

/// One explicit shifted QR step `H − μI = QR, H ← RQ + μI` on the active
/// block `lo..=hi`.
fn qr_step(h: &mut CMatrix, lo: usize, hi: usize, mu: C64) {
    for k in lo..=hi {
        h[(k, k)] -= mu;
    }
    let mut rots: Vec<(f64, C64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let a = h[(k, k)];
        let b = h[(k + 1, k)];
        let r = a.norm().hypot(b.norm());
        let (c, s) = if r == 0.0 {
            (1.0, ZERO)
        } else if a == ZERO {
            (0.0, b.conj() / b.norm())
        } else {
            let an = a.norm();
            (an / r, (a / an) * b.conj() / r)
        };
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = c * x + s * y;
            h[(k + 1, j)] = -s.conj() * x + c * y;
        }
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = lo + idx;
        for i in lo..=(k + 2).min(hi) {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * c + y * s.conj();
            h[(i, k + 1)] = -x * s + y * c;
        }
    }
    for k in lo..=hi {
        h[(k, k)] += mu;
    }
}
