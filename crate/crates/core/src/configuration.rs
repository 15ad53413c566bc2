//! Configurations of point singularities and their configuration matrix.
//!
//! A configuration is an ordered set of distinct points `z_1..z_N` in the
//! complex plane. Its configuration matrix `A` has entries
//! `a[α][β] = 1/(z_α − z_β)` off the diagonal and zeros on it; strengths
//! `Γ` hold the configuration fixed exactly when `AΓ = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, C64, ZERO};

/// Default minimum pairwise distance between singularities.
pub const DEFAULT_MIN_SEPARATION: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<C64>,
    min_separation: f64,
}

impl PointSet {
    pub fn new(points: Vec<C64>) -> Result<Self> {
        Self::with_min_separation(points, DEFAULT_MIN_SEPARATION)
    }

    pub fn with_min_separation(points: Vec<C64>, min_separation: f64) -> Result<Self> {
        if !(min_separation >= 0.0 && min_separation.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "minimum separation must be finite and non-negative, got {min_separation}"
            )));
        }
        if points.len() < 2 {
            return Err(Error::TooFewPoints {
                min: 2,
                found: points.len(),
            });
        }
        if let Some(index) = points.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        if let Some((i, j, distance)) = closest_pair(&points) {
            if distance < min_separation {
                return Err(Error::DegenerateConfiguration {
                    i,
                    j,
                    distance,
                    min_separation,
                });
            }
        }
        Ok(Self { points, min_separation })
    }

    /// Points on the real axis.
    pub fn from_reals(xs: &[f64]) -> Result<Self> {
        Self::new(xs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, C64> {
        self.points.iter()
    }

    pub fn min_separation(&self) -> f64 {
        self.min_separation
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.points
    }

    /// Apply `z ↦ scale·z + shift` to every point. The separation floor is
    /// scaled by `|scale|` along with the distances.
    pub fn transformed(&self, scale: C64, shift: C64) -> Result<Self> {
        Self::with_min_separation(
            self.points.iter().map(|&z| scale * z + shift).collect(),
            self.min_separation * scale.norm(),
        )
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    /// `true` when all points lie on one straight line (within `tol`
    /// relative to the diameter).
    pub fn is_collinear(&self, tol: f64) -> bool {
        let p0 = self.points[0];
        let Some(&far) = self
            .points
            .iter()
            .max_by(|a, b| (*a - p0).norm().total_cmp(&(*b - p0).norm()))
        else {
            return true;
        };
        let dir = far - p0;
        let len = dir.norm();
        if len == 0.0 {
            return true;
        }
        let unit = dir / len;
        self.points
            .iter()
            .all(|&z| ((z - p0) * unit.conj()).im.abs() <= tol * len)
    }
}

impl std::ops::Deref for PointSet {
    type Target = [C64];

    fn deref(&self) -> &[C64] {
        &self.points
    }
}

fn closest_pair(points: &[C64]) -> Option<(usize, usize, f64)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = (points[i] - points[j]).norm();
            if best.is_none_or(|(_, _, b)| d < b) {
                best = Some((i, j, d));
            }
        }
    }
    best
}

/// Complex singularity strengths, one per point.
///
/// The real part is the circulation and the imaginary part the source
/// strength of each singularity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrengthVector(pub Vec<C64>);

impl StrengthVector {
    pub fn new(strengths: Vec<C64>) -> Self {
        Self(strengths)
    }

    pub fn from_reals(xs: &[f64]) -> Self {
        Self(xs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }

    pub fn total(&self) -> C64 {
        self.0.iter().sum()
    }

    pub fn norm(&self) -> f64 {
        crate::matrix::norm2(&self.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|g| g.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self(self.0.iter().map(|&g| g * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|g| *g == ZERO)
    }

    /// Rescale so that the first entry whose magnitude exceeds
    /// `rel_tol · max|Γ|` becomes exactly `1 + 0i`.
    pub fn normalized(&self, rel_tol: f64) -> Result<Self> {
        let max = self.max_abs();
        if max == 0.0 || !max.is_finite() {
            return Err(Error::ZeroStrengths);
        }
        let lead = self
            .0
            .iter()
            .position(|g| g.norm() > rel_tol * max)
            .ok_or(Error::ZeroStrengths)?;
        let pivot = self.0[lead];
        let mut out: Vec<C64> = self.0.iter().map(|&g| g / pivot).collect();
        out[lead] = C64::new(1.0, 0.0);
        Ok(Self(out))
    }
}

impl std::ops::Deref for StrengthVector {
    type Target = [C64];

    fn deref(&self) -> &[C64] {
        &self.0
    }
}

/// Skew-symmetric matrix `A` with `a[α][β] = 1/(z_α − z_β)`.
///
/// Only constructed through [`build_matrix`] or [`ConfigurationMatrix::from_upper`],
/// which compute each off-diagonal value once and store its exact negation
/// in the mirrored slot.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigurationMatrix {
    entries: CMatrix,
}

impl ConfigurationMatrix {
    /// Skew-symmetric matrix from its strict upper triangle `f(i, j)`, `i < j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                entries[(i, j)] = v;
                entries[(j, i)] = -v;
            }
        }
        Self { entries }
    }

    pub fn n(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[(i, j)]
    }

    /// `true` when every entry has zero imaginary part (collinear on the real axis).
    pub fn is_real(&self) -> bool {
        self.entries.as_slice().iter().all(|v| v.im == 0.0)
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        self.entries.mul_vec(x)
    }
}

pub fn build_matrix(points: &PointSet) -> ConfigurationMatrix {
    let z = points.as_slice();
    ConfigurationMatrix::from_upper(z.len(), |i, j| (z[i] - z[j]).inv())
}

/// `A = B + C` with `B` Hermitian and `C` skew-Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSplit {
    pub b: CMatrix,
    pub c: CMatrix,
}

pub fn hermitian_split(a: &ConfigurationMatrix) -> HermitianSplit {
    let m = a.entries();
    let n = m.rows();
    let half = 0.5;
    let b = CMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * half);
    let c = CMatrix::from_fn(n, n, |i, j| (m[(i, j)] - m[(j, i)].conj()) * half);
    HermitianSplit { b, c }
}

/// Both routes to the departure from normality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalityDefect {
    /// `‖AA† − A†A‖_F`
    pub direct: f64,
    /// `‖2(CB − BC)‖_F` from the Hermitian split.
    pub via_split: f64,
}

impl NormalityDefect {
    pub fn agrees(&self, scale: f64) -> bool {
        (self.direct - self.via_split).abs() <= 1e-10 * self.direct.max(self.via_split) + 1e-13 * scale
    }
}

pub fn normality_defect_routes(a: &ConfigurationMatrix) -> NormalityDefect {
    let m = a.entries();
    let h = m.adjoint();
    let direct = (m * &h).sub(&(&h * m)).frobenius_norm();
    let HermitianSplit { b, c } = hermitian_split(a);
    let via_split = (&c * &b).sub(&(&b * &c)).scale(C64::new(2.0, 0.0)).frobenius_norm();
    NormalityDefect { direct, via_split }
}

/// Frobenius norm of `AA† − A†A`; zero exactly when `A` is normal.
pub fn normality_defect(a: &ConfigurationMatrix) -> f64 {
    let routes = normality_defect_routes(a);
    debug_assert!(
        routes.agrees(a.entries().frobenius_norm().powi(2)),
        "normality routes disagree: {routes:?}"
    );
    routes.direct
}
