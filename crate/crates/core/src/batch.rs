//! Solve or analyse many configurations at once.

use crate::configuration::{build_matrix, PointSet};
use crate::equilibrium::{solve_strengths, EquilibriumSolution};
use crate::error::Result;
use crate::exec::{map_slice, Execution};
use crate::spectrum::{spectral_report, NormalizationMode, SpectralReport};

pub fn solve_many(configs: &[PointSet], rel_tol: f64, exec: Execution) -> Vec<Result<EquilibriumSolution>> {
    map_slice(exec, configs, |p| solve_strengths(p, rel_tol))
}

pub fn spectral_many(
    configs: &[PointSet],
    mode: NormalizationMode,
    rel_tol: f64,
    exec: Execution,
) -> Vec<Result<SpectralReport>> {
    map_slice(exec, configs, |p| spectral_report(&build_matrix(p), mode, rel_tol))
}
