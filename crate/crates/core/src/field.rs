//! The induced velocity field `v(z) = conj((1/2πi) Σ Γ_β/(z − z_β))`, grid
//! sampling, streamline tracing and the far-field comparison against a
//! single singularity of strength `ΣΓ`.

use std::f64::consts::{PI, TAU};
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::configuration::DEFAULT_MIN_SEPARATION;
use crate::equilibrium::TOTAL_STRENGTH_REL_TOL;
use crate::error::{Error, Result};
use crate::exec::{map_range, Execution};
use crate::matrix::C64;

/// Samples on each circle used by [`far_field_deviation`].
pub const FAR_FIELD_SAMPLES: usize = 360;

pub(crate) fn check_lengths(points: &[C64], strengths: &[C64]) -> Result<()> {
    if points.len() != strengths.len() {
        return Err(Error::LengthMismatch {
            expected: points.len(),
            found: strengths.len(),
        });
    }
    Ok(())
}

/// Sum without the singularity check. Callers make sure `z` is not on a point.
fn raw_velocity(points: &[C64], strengths: &[C64], z: C64) -> C64 {
    let sum: C64 = points.iter().zip(strengths).map(|(p, g)| g / (z - p)).sum();
    (sum / C64::new(0.0, TAU)).conj()
}

fn nearest(points: &[C64], z: C64) -> Option<(usize, f64)> {
    points
        .iter()
        .map(|p| (z - p).norm())
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

pub fn velocity_at(points: &[C64], strengths: &[C64], z: C64) -> Result<C64> {
    check_lengths(points, strengths)?;
    if let Some((index, distance)) = nearest(points, z) {
        if distance < DEFAULT_MIN_SEPARATION {
            return Err(Error::SingularPoint { index, distance });
        }
    }
    Ok(raw_velocity(points, strengths, z))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    /// Bounding box of the points padded by half its larger side on every edge.
    pub fn around(points: &[C64]) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for z in points {
            x0 = x0.min(z.re);
            x1 = x1.max(z.re);
            y0 = y0.min(z.im);
            y1 = y1.max(z.im);
        }
        if points.is_empty() {
            (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
        }
        let side = (x1 - x0).max(y1 - y0);
        let pad = if side > 0.0 { 0.5 * side } else { 1.0 };
        Self {
            x_min: x0 - pad,
            x_max: x1 + pad,
            y_min: y0 - pad,
            y_max: y1 + pad,
        }
    }

    pub fn contains(&self, z: C64) -> bool {
        (self.x_min..=self.x_max).contains(&z.re) && (self.y_min..=self.y_max).contains(&z.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSample {
    pub position: C64,
    /// Zero at singular nodes; check `singular`.
    pub velocity: C64,
    /// The node lies within the minimum separation of a point.
    pub singular: bool,
}

/// Velocity samples on an `nx × ny` lattice, stored row by row with `y`
/// in the outer loop.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub window: Window,
    pub nx: usize,
    pub ny: usize,
    pub samples: Vec<GridSample>,
}

impl FieldGrid {
    pub fn at(&self, ix: usize, iy: usize) -> &GridSample {
        &self.samples[iy * self.nx + ix]
    }

    /// CSV with header `x,y,u,v,singular`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "x,y,u,v,singular")?;
        for s in &self.samples {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e},{}",
                s.position.re,
                s.position.im,
                s.velocity.re,
                s.velocity.im,
                u8::from(s.singular)
            )?;
        }
        Ok(())
    }
}

pub fn velocity_grid(
    points: &[C64],
    strengths: &[C64],
    window: &Window,
    nx: usize,
    ny: usize,
    exec: Execution,
) -> Result<FieldGrid> {
    check_lengths(points, strengths)?;
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid needs at least 2×2 nodes, got {nx}×{ny}"
        )));
    }
    if !(window.x_max > window.x_min && window.y_max > window.y_min) {
        return Err(Error::InvalidArgument("empty grid window".into()));
    }
    let dx = (window.x_max - window.x_min) / (nx - 1) as f64;
    let dy = (window.y_max - window.y_min) / (ny - 1) as f64;
    let samples = map_range(exec, nx * ny, |k| {
        let (ix, iy) = (k % nx, k / nx);
        let position = C64::new(window.x_min + dx * ix as f64, window.y_min + dy * iy as f64);
        let singular = nearest(points, position).is_some_and(|(_, d)| d < DEFAULT_MIN_SEPARATION);
        let velocity = if singular {
            C64::new(0.0, 0.0)
        } else {
            raw_velocity(points, strengths, position)
        };
        GridSample {
            position,
            velocity,
            singular,
        }
    });
    Ok(FieldGrid {
        window: *window,
        nx,
        ny,
        samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    StepLimit,
    WindowExit,
    SingularityApproach,
    Stagnation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Streamline {
    pub vertices: Vec<C64>,
    pub terminated_by: Termination,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamlineOptions {
    /// Arclength per RK4 step.
    pub step: f64,
    pub max_steps: usize,
    /// Defaults to [`Window::around`] the points.
    pub window: Option<Window>,
    /// `|v|` below this fraction of `Σ|Γ|/(2π d)`, with `d` the distance to
    /// the nearest point, counts as stagnation.
    pub stagnation_tol: f64,
}

impl Default for StreamlineOptions {
    fn default() -> Self {
        Self {
            step: 1e-2,
            max_steps: 10_000,
            window: None,
            stagnation_tol: 1e-9,
        }
    }
}

/// Integrate `dz/ds = v/|v|` from `start` with RK4 in arclength.
pub fn trace_streamline(points: &[C64], strengths: &[C64], start: C64, opts: &StreamlineOptions) -> Result<Streamline> {
    check_lengths(points, strengths)?;
    if !(opts.step > 0.0 && opts.step.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "streamline step must be positive, got {}",
            opts.step
        )));
    }
    velocity_at(points, strengths, start)?;
    let window = opts.window.unwrap_or_else(|| Window::around(points));
    let weight: f64 = strengths.iter().map(|g| g.norm()).sum();
    let h = opts.step;

    // unit direction, or None at a stagnation point or too close to a singularity
    let direction = |z: C64| -> std::result::Result<C64, Termination> {
        let d = nearest(points, z).map_or(f64::INFINITY, |(_, d)| d);
        if d < h {
            return Err(Termination::SingularityApproach);
        }
        let v = raw_velocity(points, strengths, z);
        let scale = weight / (2.0 * PI * d);
        if !(v.norm() > opts.stagnation_tol * scale) {
            return Err(Termination::Stagnation);
        }
        Ok(v / v.norm())
    };

    let mut vertices = vec![start];
    let mut z = start;
    let mut terminated_by = Termination::StepLimit;
    for _ in 0..opts.max_steps {
        let next = (|| {
            let k1 = direction(z)?;
            let k2 = direction(z + k1 * (h / 2.0))?;
            let k3 = direction(z + k2 * (h / 2.0))?;
            let k4 = direction(z + k3 * h)?;
            Ok(z + (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (h / 6.0))
        })();
        match next {
            Ok(n) => {
                z = n;
                vertices.push(z);
                if !window.contains(z) {
                    terminated_by = Termination::WindowExit;
                    break;
                }
            }
            Err(t) => {
                terminated_by = t;
                break;
            }
        }
    }
    Ok(Streamline {
        vertices,
        terminated_by,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FarFieldDeviation {
    pub center: C64,
    pub total_strength: C64,
    pub radius: f64,
    /// `max |v − v_single| / |v_single|` on the circle of radius `R`.
    pub deviation: f64,
    /// Same on the circle of radius `2R`.
    pub deviation_double: f64,
    /// `deviation / deviation_double`; about 4 for a quadrupole-led remainder.
    pub ratio: f64,
}

/// Compare the field with a single singularity of strength `ΣΓ` at the
/// centre of vorticity, on circles of radius `R` and `2R` about that centre.
/// `R` must be at least three times the configuration diameter.
pub fn far_field_deviation(points: &[C64], strengths: &[C64], radius: f64) -> Result<FarFieldDeviation> {
    check_lengths(points, strengths)?;
    let total: C64 = strengths.iter().sum();
    let max_abs = strengths.iter().map(|g| g.norm()).fold(0.0, f64::max);
    if !(total.norm() > TOTAL_STRENGTH_REL_TOL * max_abs) {
        return Err(Error::UndefinedFarField);
    }
    let diameter = points
        .iter()
        .flat_map(|a| points.iter().map(move |b| (a - b).norm()))
        .fold(0.0, f64::max);
    if !(radius >= 3.0 * diameter && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "far-field radius {radius} is below three diameters ({})",
            3.0 * diameter
        )));
    }
    let center = points.iter().zip(strengths).map(|(z, g)| z * g).sum::<C64>() / total;
    let on_circle = |r: f64| {
        (0..FAR_FIELD_SAMPLES)
            .map(|k| {
                let z = center + C64::from_polar(r, TAU * k as f64 / FAR_FIELD_SAMPLES as f64);
                let v = raw_velocity(points, strengths, z);
                let single = raw_velocity(&[center], &[total], z);
                (v - single).norm() / single.norm()
            })
            .fold(0.0, f64::max)
    };
    let deviation = on_circle(radius);
    let deviation_double = on_circle(2.0 * radius);
    Ok(FarFieldDeviation {
        center,
        total_strength: total,
        radius,
        deviation,
        deviation_double,
        ratio: deviation / deviation_double,
    })
}
