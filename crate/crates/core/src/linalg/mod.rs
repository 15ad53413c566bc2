//! Singular values, eigenvalues, nullspaces, determinants and Pfaffians of
//! configuration matrices.

mod eigen;
mod lu;
mod pfaffian;
mod svd;

pub use eigen::{eigen_matrix, zero_multiplicity, EigenResult};
pub use lu::determinant_matrix;
pub use pfaffian::{pfaffian_expansion, pfaffian_householder, pfaffian_matrix, EXPANSION_MAX};
pub use svd::{svd_matrix, SvdResult};

use crate::configuration::ConfigurationMatrix;
use crate::error::{Error, Result};
use crate::matrix::C64;

/// Default relative rank tolerance.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// Floor used for the rank threshold when `σ_max = 0`.
const ABSOLUTE_GUARD: f64 = 1e-300;

pub fn svd(a: &ConfigurationMatrix) -> Result<SvdResult> {
    svd_matrix(a.entries())
}

pub fn eigenvalues(a: &ConfigurationMatrix) -> Result<EigenResult> {
    eigen_matrix(a.entries(), DEFAULT_REL_TOL)
}

pub fn eigenvalues_with_tol(a: &ConfigurationMatrix, rel_tol: f64) -> Result<EigenResult> {
    eigen_matrix(a.entries(), rel_tol)
}

pub fn determinant(a: &ConfigurationMatrix) -> C64 {
    determinant_matrix(a.entries())
}

pub fn pfaffian(a: &ConfigurationMatrix) -> Result<C64> {
    if a.n() % 2 == 1 {
        return Err(Error::OddDimension(a.n()));
    }
    Ok(pfaffian_matrix(a.entries()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub rank: usize,
    pub nullity: usize,
    pub threshold_used: f64,
    /// Right singular vectors whose singular value is at or below the threshold.
    pub nullspace_basis: Vec<Vec<C64>>,
}

/// Rank threshold `rel_tol · σ_max · N`.
pub fn rank_threshold(sigma: &[f64], rel_tol: f64) -> f64 {
    let smax = sigma.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        ABSOLUTE_GUARD
    } else {
        rel_tol * smax * sigma.len() as f64
    }
}

pub fn nullspace(a: &ConfigurationMatrix, rel_tol: f64) -> Result<RankReport> {
    let s = svd(a)?;
    Ok(nullspace_from_svd(&s, rel_tol))
}

pub fn nullspace_from_svd(s: &SvdResult, rel_tol: f64) -> RankReport {
    let threshold = rank_threshold(&s.sigma, rel_tol);
    let rank = s.sigma.iter().filter(|&&x| x > threshold).count();
    let nullspace_basis = (rank..s.sigma.len()).map(|j| s.v.column(j)).collect();
    RankReport {
        rank,
        nullity: s.sigma.len() - rank,
        threshold_used: threshold,
        nullspace_basis,
    }
}
