//! Fixed equilibria of logarithmic point singularities in the plane.
//!
//! `N` points `z_α` carrying complex strengths `Γ_α = Γ_r + iΓ_i` (vortex
//! and source/sink parts) stay fixed exactly when `AΓ = 0` for the
//! skew-symmetric configuration matrix `a_αβ = 1/(z_α − z_β)`. The crate
//! builds `A`, extracts its kernel by SVD, classifies the resulting flow and
//! summarises the singular spectrum by its entropy.
//!
//! ```
//! use equilibria::{build_matrix, solve_strengths, PointSet};
//!
//! let points = PointSet::from_reals(&[0.0, 0.5, 1.0]).unwrap();
//! let sol = solve_strengths(&points, equilibria::DEFAULT_REL_TOL).unwrap();
//! assert!((sol.strengths[1].re + 0.5).abs() < 1e-12);
//! assert!(build_matrix(&points).is_real());
//! ```

// `!(x > t)` is used on purpose so NaN falls on the rejecting side
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod batch;
pub mod configuration;
pub mod dynamics;
pub mod equilibrium;
pub mod error;
pub mod exec;
pub mod field;
pub mod generators;
pub mod linalg;
pub mod matrix;
pub mod spectrum;

pub use configuration::{
    build_matrix, hermitian_split, normality_defect, ConfigurationMatrix, HermitianSplit, PointSet, StrengthVector,
    DEFAULT_MIN_SEPARATION,
};
pub use dynamics::{fixedness_check, integrate, single_orbit, CollisionEvent, OrbitParams, TrajectorySet};
pub use equilibrium::{
    center_of_vorticity, classify_far_field, classify_singularity, residual, solve_strengths, EquilibriumSolution,
    FlowKind,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{far_field_deviation, trace_streamline, velocity_at, velocity_grid, Window};
pub use linalg::{nullspace, RankReport, DEFAULT_REL_TOL};
pub use matrix::{CMatrix, C64};
pub use spectrum::{normalize_spectrum, shannon_entropy, spectral_report, NormalizationMode, SpectralReport};
