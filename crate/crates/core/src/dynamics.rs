//! Point-singularity motion `ż_α = conj((1/2πi) Σ_{β≠α} Γ_β/(z_α − z_β))`:
//! the closed-form orbit of a point advected by one fixed singularity, and a
//! fixed-step RK4 integrator with collision monitoring.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::configuration::DEFAULT_MIN_SEPARATION;
use crate::error::{Error, Result};
use crate::linalg::{eigen_matrix, DEFAULT_REL_TOL};
use crate::matrix::{CMatrix, C64};

/// Pairs closer than this multiple of the minimum separation are logged.
pub const WARNING_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollisionEvent {
    pub time: f64,
    pub i: usize,
    pub j: usize,
    pub distance: f64,
    /// `true` once the pair is below the minimum separation or the step
    /// can no longer resolve it.
    pub fatal: bool,
}

impl fmt::Display for CollisionEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} between points {} and {} at t = {} (distance {:e})",
            if self.fatal { "collision" } else { "close approach" },
            self.i,
            self.j,
            self.time,
            self.distance
        )
    }
}

/// A point advected by a fixed singularity of strength `Γ` at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitParams {
    pub gamma: C64,
    pub r0: f64,
    pub theta0: f64,
}

impl OrbitParams {
    /// `π r₀² / (−Γ_i)` for a sink component, otherwise `None`.
    pub fn collapse_time(&self) -> Option<f64> {
        (self.gamma.im < 0.0).then(|| PI * self.r0 * self.r0 / -self.gamma.im)
    }
}

/// `(r(t), θ(t))` with `r = √(r₀² + Γ_i t/π)` and
/// `θ = θ₀ + (Γ_r/2Γ_i) ln(1 + Γ_i t/(π r₀²))`, or
/// `θ₀ + Γ_r t/(2π r₀²)` when `Γ_i = 0`.
pub fn single_orbit(p: &OrbitParams, t: f64) -> Result<(f64, f64)> {
    if !(p.r0 > 0.0) || !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "orbit needs r0 > 0 and finite t ≥ 0, got r0 = {}, t = {t}",
            p.r0
        )));
    }
    if let Some(tc) = p.collapse_time() {
        if t >= tc {
            return Err(Error::CollapseReached { t, collapse_time: tc });
        }
    }
    let (gr, gi) = (p.gamma.re, p.gamma.im);
    let r2 = p.r0 * p.r0;
    let r = (r2 + gi * t / PI).sqrt();
    let theta = if gi == 0.0 {
        p.theta0 + gr * t / (2.0 * PI * r2)
    } else {
        let x = gi * t / (PI * r2);
        p.theta0 + gr / (2.0 * gi) * x.ln_1p()
    };
    Ok((r, theta))
}

/// `ż_α` for every point.
pub fn velocities(points: &[C64], strengths: &[C64]) -> Vec<C64> {
    let k = C64::new(0.0, 2.0 * PI).inv();
    (0..points.len())
        .map(|a| {
            let sum: C64 = (0..points.len())
                .filter(|&b| b != a)
                .map(|b| strengths[b] / (points[a] - points[b]))
                .sum();
            (k * sum).conj()
        })
        .collect()
}

/// Jacobian of the motion at `points`, as the real `2N×2N` matrix acting on
/// `(δx₁..δx_N, δy₁..δy_N)`.
pub fn linearization(points: &[C64], strengths: &[C64]) -> Result<CMatrix> {
    crate::field::check_lengths(points, strengths)?;
    let n = points.len();
    let k = C64::new(0.0, 2.0 * PI).inv();
    let mut j = CMatrix::zeros(n, n);
    for a in 0..n {
        for b in (0..n).filter(|&b| b != a) {
            let t = k * strengths[b] / (points[a] - points[b]).powi(2);
            j[(a, b)] = t;
            j[(a, a)] -= t;
        }
    }
    // δż = conj(J δz)
    Ok(CMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let v = j[(r % n, c % n)];
        let x = match (r < n, c < n) {
            (true, true) => v.re,
            (false, false) => -v.re,
            _ => -v.im,
        };
        C64::new(x, 0.0)
    }))
}

/// Largest real part in the spectrum of [`linearization`]. Perturbations of
/// an equilibrium grow roughly like `exp(rate·t)`.
pub fn linear_growth_rate(points: &[C64], strengths: &[C64]) -> Result<f64> {
    let m = linearization(points, strengths)?;
    let e = eigen_matrix(&m, DEFAULT_REL_TOL)?;
    Ok(e.lambdas.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySet {
    pub times: Vec<f64>,
    /// `positions[k]` is the configuration at `times[k]`.
    pub positions: Vec<Vec<C64>>,
    /// Close approaches, in time order.
    pub events: Vec<CollisionEvent>,
}

impl TrajectorySet {
    pub fn last(&self) -> &[C64] {
        self.positions.last().expect("trajectory holds the initial state")
    }

    /// `max_α max_t |z_α(t) − z_α(0)|`
    pub fn max_displacement(&self) -> f64 {
        let start = &self.positions[0];
        self.positions
            .iter()
            .flat_map(|pos| pos.iter().zip(start).map(|(z, z0)| (z - z0).norm()))
            .fold(0.0, f64::max)
    }
}

fn closest_pair(points: &[C64]) -> Option<(usize, usize, f64)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = (points[i] - points[j]).norm();
            if best.is_none_or(|b| d < b.2) {
                best = Some((i, j, d));
            }
        }
    }
    best
}

fn axpy(z: &[C64], k: &[C64], h: f64) -> Vec<C64> {
    z.iter().zip(k).map(|(z, k)| z + k * h).collect()
}

/// Fixed-step RK4 from `t = 0` to `t_final`; the last step is shortened to
/// land on `t_final` exactly.
///
/// A pair closer than `WARNING_FACTOR · δ` is logged. The run aborts with
/// [`Error::CollisionAbort`] when a pair drops below `δ`, a step moves some
/// point further than the current closest-pair distance, or the state stops
/// being finite.
pub fn integrate(points: &[C64], strengths: &[C64], t_final: f64, dt: f64) -> Result<TrajectorySet> {
    integrate_with_separation(points, strengths, t_final, dt, DEFAULT_MIN_SEPARATION)
}

pub fn integrate_with_separation(
    points: &[C64],
    strengths: &[C64],
    t_final: f64,
    dt: f64,
    min_separation: f64,
) -> Result<TrajectorySet> {
    if points.len() != strengths.len() {
        return Err(Error::LengthMismatch {
            expected: points.len(),
            found: strengths.len(),
        });
    }
    if points.is_empty() {
        return Err(Error::TooFewPoints { min: 1, found: 0 });
    }
    if !(t_final >= 0.0 && t_final.is_finite() && dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need finite t_final ≥ 0 and dt > 0, got t_final = {t_final}, dt = {dt}"
        )));
    }
    if let Some(index) = points.iter().chain(strengths).position(|z| !z.is_finite()) {
        return Err(Error::NonFinite {
            index: index % points.len(),
        });
    }

    let steps = (t_final / dt).ceil() as usize;
    let mut z = points.to_vec();
    let mut t = 0.0;
    let mut out = TrajectorySet {
        times: vec![0.0],
        positions: vec![z.clone()],
        events: vec![],
    };
    let mut warned: Vec<(usize, usize)> = vec![];

    for step in 0..steps {
        let h = if step + 1 == steps { t_final - t } else { dt };
        let pair = closest_pair(&z);
        if let Some((i, j, d)) = pair {
            let event = CollisionEvent {
                time: t,
                i,
                j,
                distance: d,
                fatal: d < min_separation,
            };
            if event.fatal {
                return Err(Error::CollisionAbort(event));
            }
            if d < WARNING_FACTOR * min_separation && !warned.contains(&(i, j)) {
                warned.push((i, j));
                out.events.push(event);
            }
        }

        let k1 = velocities(&z, strengths);
        let k2 = velocities(&axpy(&z, &k1, h / 2.0), strengths);
        let k3 = velocities(&axpy(&z, &k2, h / 2.0), strengths);
        let k4 = velocities(&axpy(&z, &k3, h), strengths);
        let next: Vec<C64> = (0..z.len())
            .map(|a| z[a] + (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]) * (h / 6.0))
            .collect();
        t = if step + 1 == steps { t_final } else { t + h };

        let jump = next.iter().zip(&z).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let unresolved = match pair {
            Some((_, _, d)) => !(jump <= d),
            None => false,
        };
        let after = closest_pair(&next);
        let too_close = after.is_some_and(|(_, _, d)| d < min_separation);
        if unresolved || too_close || next.iter().any(|v| !v.is_finite()) {
            let (i, j, d) = after.or(pair).unwrap_or((0, 0, f64::NAN));
            return Err(Error::CollisionAbort(CollisionEvent {
                time: t,
                i,
                j,
                distance: d,
                fatal: true,
            }));
        }
        z = next;
        out.times.push(t);
        out.positions.push(z.clone());
    }
    Ok(out)
}

/// Largest displacement of any point over `[0, t_final]`.
pub fn fixedness_check(points: &[C64], strengths: &[C64], t_final: f64, dt: f64) -> Result<f64> {
    Ok(integrate(points, strengths, t_final, dt)?.max_displacement())
}
