//! Strength vectors that hold a configuration fixed, residual checks,
//! far-field classification and the closed forms for three points.

use serde::{Deserialize, Serialize};

use crate::configuration::{build_matrix, ConfigurationMatrix, PointSet, StrengthVector, DEFAULT_MIN_SEPARATION};
use crate::error::{Error, Result};
use crate::linalg::{self, nullspace_from_svd};
use crate::matrix::{norm2, C64};

/// Entries below this fraction of `max|Γ|` are skipped when choosing the
/// normalisation pivot.
pub const NORMALIZATION_REL_TOL: f64 = 1e-8;

/// Default relative tolerance for the far-field and singularity classifiers.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-6;

/// `|ΣΓ|` below this fraction of `max|Γ|` counts as a vanishing total strength.
pub const TOTAL_STRENGTH_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumSolution {
    /// Representative strengths, first significant entry equal to `1 + 0i`.
    pub strengths: StrengthVector,
    /// `‖AΓ‖ / ‖Γ‖`
    pub residual: f64,
    /// Absolute singular-value threshold the kernel was extracted with.
    pub tolerance: f64,
    pub nullity: usize,
    pub zero_eigenvalue_multiplicity: usize,
    /// Orthonormal basis of the numerical kernel (`nullity` vectors).
    pub basis: Vec<Vec<C64>>,
}

pub fn solve_strengths(points: &PointSet, rel_tol: f64) -> Result<EquilibriumSolution> {
    let a = build_matrix(points);
    solve_matrix(&a, rel_tol)
}

pub fn solve_matrix(a: &ConfigurationMatrix, rel_tol: f64) -> Result<EquilibriumSolution> {
    let s = linalg::svd(a)?;
    let report = nullspace_from_svd(&s, rel_tol);
    if report.nullity == 0 {
        return Err(Error::NoEquilibrium { n: a.n() });
    }
    let zero_eigenvalue_multiplicity = linalg::zero_multiplicity(a.entries(), rel_tol)?;
    let strengths = StrengthVector::new(report.nullspace_basis[0].clone()).normalized(NORMALIZATION_REL_TOL)?;
    let residual = residual(a, &strengths)?;
    Ok(EquilibriumSolution {
        strengths,
        residual,
        tolerance: report.threshold_used,
        nullity: report.nullity,
        zero_eigenvalue_multiplicity,
        basis: report.nullspace_basis,
    })
}

/// `‖AΓ‖₂ / ‖Γ‖₂`
pub fn residual(a: &ConfigurationMatrix, strengths: &StrengthVector) -> Result<f64> {
    if strengths.len() != a.n() {
        return Err(Error::LengthMismatch {
            expected: a.n(),
            found: strengths.len(),
        });
    }
    let norm = strengths.norm();
    if norm == 0.0 {
        return Err(Error::ZeroStrengths);
    }
    Ok(norm2(&a.apply(strengths)) / norm)
}

/// Kernel of the three-point collinear configuration `x1, x2, x3`:
/// `(1, −(x3−x2)/(x3−x1), (x3−x2)/(x2−x1))`.
pub fn collinear_three_closed_form(x1: f64, x2: f64, x3: f64) -> Result<StrengthVector> {
    let xs = [x1, x2, x3];
    for i in 0..3 {
        for j in i + 1..3 {
            let d = (xs[i] - xs[j]).abs();
            if !(d >= DEFAULT_MIN_SEPARATION) {
                return Err(Error::DegenerateConfiguration {
                    i,
                    j,
                    distance: d,
                    min_separation: DEFAULT_MIN_SEPARATION,
                });
            }
        }
    }
    Ok(StrengthVector::from_reals(&[
        1.0,
        -(x3 - x2) / (x3 - x1),
        (x3 - x2) / (x2 - x1),
    ]))
}

/// Unnormalised kernel `(1/(z−1), −1/z, 1)` of the triangle `(0, 1, z)`.
pub fn triangle_kernel(z: C64) -> Result<[C64; 3]> {
    for (j, p) in [(0, C64::new(0.0, 0.0)), (1, C64::new(1.0, 0.0))] {
        let d = (z - p).norm();
        if !(d >= DEFAULT_MIN_SEPARATION) {
            return Err(Error::DegenerateConfiguration {
                i: j,
                j: 2,
                distance: d,
                min_separation: DEFAULT_MIN_SEPARATION,
            });
        }
    }
    Ok([(z - 1.0).inv(), -z.inv(), C64::new(1.0, 0.0)])
}

/// Normalised kernel of the triangle `(0, 1, z)`.
pub fn triangle_closed_form(z: C64) -> Result<StrengthVector> {
    StrengthVector::new(triangle_kernel(z)?.to_vec()).normalized(NORMALIZATION_REL_TOL)
}

/// The local flow type of a single singularity, or of the far field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowKind {
    VortexCcw,
    VortexCw,
    Source,
    Sink,
    SpiralSourceCcw,
    SpiralSourceCw,
    SpiralSinkCcw,
    SpiralSinkCw,
    Null,
}

impl FlowKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FlowKind::VortexCcw => "vortex_ccw",
            FlowKind::VortexCw => "vortex_cw",
            FlowKind::Source => "source",
            FlowKind::Sink => "sink",
            FlowKind::SpiralSourceCcw => "spiral_source_ccw",
            FlowKind::SpiralSourceCw => "spiral_source_cw",
            FlowKind::SpiralSinkCcw => "spiral_sink_ccw",
            FlowKind::SpiralSinkCw => "spiral_sink_cw",
            FlowKind::Null => "null",
        }
    }

    pub fn is_spiral(self) -> bool {
        matches!(
            self,
            FlowKind::SpiralSourceCcw | FlowKind::SpiralSourceCw | FlowKind::SpiralSinkCcw | FlowKind::SpiralSinkCw
        )
    }
}

impl std::fmt::Display for FlowKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Decision table on the signs of `Re s` (rotation) and `Im s` (radial
/// flow); components within `threshold` of zero count as zero.
pub fn classify_with_threshold(s: C64, threshold: f64) -> FlowKind {
    if s.norm() <= threshold {
        return FlowKind::Null;
    }
    let ccw = s.re > 0.0;
    let outward = s.im > 0.0;
    if s.im.abs() <= threshold {
        if ccw {
            FlowKind::VortexCcw
        } else {
            FlowKind::VortexCw
        }
    } else if s.re.abs() <= threshold {
        if outward {
            FlowKind::Source
        } else {
            FlowKind::Sink
        }
    } else {
        match (outward, ccw) {
            (true, true) => FlowKind::SpiralSourceCcw,
            (true, false) => FlowKind::SpiralSourceCw,
            (false, true) => FlowKind::SpiralSinkCcw,
            (false, false) => FlowKind::SpiralSinkCw,
        }
    }
}

pub fn classify_singularity(gamma: C64, tol: f64) -> FlowKind {
    classify_with_threshold(gamma, tol * gamma.norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FarFieldClass {
    pub total_strength: C64,
    pub kind: FlowKind,
}

/// Classify the far field, a single singularity of strength `ΣΓ`.
/// The tolerance is relative to `max|Γ_α|`.
pub fn classify_far_field(strengths: &StrengthVector, tol: f64) -> FarFieldClass {
    let total = strengths.total();
    FarFieldClass {
        total_strength: total,
        kind: classify_with_threshold(total, tol * strengths.max_abs()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CenterOfVorticity {
    /// `ΣΓ_α z_α / ΣΓ_α`, zero when undefined.
    pub value: C64,
    pub defined: bool,
    /// Raw first moment `ΣΓ_α z_α`.
    pub first_moment: C64,
}

pub fn center_of_vorticity(points: &PointSet, strengths: &StrengthVector) -> Result<CenterOfVorticity> {
    if points.len() != strengths.len() {
        return Err(Error::LengthMismatch {
            expected: points.len(),
            found: strengths.len(),
        });
    }
    let total = strengths.total();
    let first_moment: C64 = points.iter().zip(strengths.iter()).map(|(z, g)| z * g).sum();
    let defined = total.norm() > TOTAL_STRENGTH_REL_TOL * strengths.max_abs();
    Ok(CenterOfVorticity {
        value: if defined {
            first_moment / total
        } else {
            C64::new(0.0, 0.0)
        },
        defined,
        first_moment,
    })
}
