//! Point placements: collinear, circular, along polar curves, and random in
//! a rectangle.
//!
//! Random placements draw from a ChaCha8 generator seeded with the caller's
//! seed; each generator kind reads its own stream, so the same seed gives
//! unrelated draws for a line and a circle. Draws that violate the minimum
//! separation are discarded and redrawn from the same stream, up to
//! [`RETRY_CAP`] times.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::configuration::PointSet;
use crate::error::{Error, Result};
use crate::matrix::C64;

pub const RETRY_CAP: usize = 100;

/// Samples in the arclength table of a polar curve.
pub const ARCLENGTH_SAMPLES: usize = 100_000;

const STREAM_LINE: u64 = 1;
const STREAM_CIRCLE: u64 = 2;
const STREAM_CURVE: u64 = 3;
const STREAM_PLANE: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Even,
    Random { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveSampling {
    /// `θ_k = θ₀ + 2πk/N`
    #[default]
    EvenParameter,
    /// Equal arclength between consecutive points.
    EvenArclength,
    RandomParameter {
        seed: u64,
    },
}

/// A tabulated polar curve `r(θ)` on `[0, 2π]`, linearly interpolated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CustomCurve {
    theta: Vec<f64>,
    r: Vec<f64>,
}

impl CustomCurve {
    /// `samples` are `(θ, r)` pairs with strictly increasing θ spanning
    /// `[0, 2π]`.
    pub fn new(samples: &[(f64, f64)]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidArgument(
                "a custom curve needs at least two samples".into(),
            ));
        }
        for (index, &(t, r)) in samples.iter().enumerate() {
            if !(t.is_finite() && r.is_finite()) {
                return Err(Error::NonFinite { index });
            }
        }
        if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::InvalidArgument(
                "custom curve angles must increase strictly".into(),
            ));
        }
        let (first, last) = (samples[0].0, samples[samples.len() - 1].0);
        if first > 1e-12 || last < TAU - 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "custom curve must span [0, 2π], got [{first}, {last}]"
            )));
        }
        Ok(Self {
            theta: samples.iter().map(|s| s.0).collect(),
            r: samples.iter().map(|s| s.1).collect(),
        })
    }

    fn segment(&self, theta: f64) -> usize {
        let t = theta.rem_euclid(TAU);
        match self.theta.partition_point(|&x| x <= t) {
            0 => 0,
            k => (k - 1).min(self.theta.len() - 2),
        }
    }

    fn radius(&self, theta: f64) -> f64 {
        let t = theta.rem_euclid(TAU);
        let k = self.segment(theta);
        let w = (t - self.theta[k]) / (self.theta[k + 1] - self.theta[k]);
        self.r[k] + w * (self.r[k + 1] - self.r[k])
    }

    fn slope(&self, theta: f64) -> f64 {
        let k = self.segment(theta);
        (self.r[k + 1] - self.r[k]) / (self.theta[k + 1] - self.theta[k])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarCurve {
    /// `r = cos 2θ`
    Flower,
    /// `r = cos²θ`
    FigureEight,
    Custom(CustomCurve),
}

impl PolarCurve {
    pub fn radius(&self, theta: f64) -> f64 {
        match self {
            PolarCurve::Flower => (2.0 * theta).cos(),
            PolarCurve::FigureEight => theta.cos().powi(2),
            PolarCurve::Custom(c) => c.radius(theta),
        }
    }

    /// `dr/dθ`
    pub fn radius_derivative(&self, theta: f64) -> f64 {
        match self {
            PolarCurve::Flower => -2.0 * (2.0 * theta).sin(),
            PolarCurve::FigureEight => -(2.0 * theta).sin(),
            PolarCurve::Custom(c) => c.slope(theta),
        }
    }

    pub fn point_at(&self, theta: f64) -> C64 {
        C64::from_polar(1.0, theta) * self.radius(theta)
    }

    fn speed(&self, theta: f64) -> f64 {
        self.radius(theta).hypot(self.radius_derivative(theta))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub curve: PolarCurve,
    /// Starting angle θ₀.
    pub phase: f64,
    pub sampling: CurveSampling,
}

/// Axis-aligned rectangle for uniform random placement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub seed: u64,
}

impl RegionSpec {
    pub fn unit_square(seed: u64) -> Self {
        Self {
            x_min: 0.0,
            x_max: 1.0,
            y_min: 0.0,
            y_max: 1.0,
            seed,
        }
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn check_count(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::TooFewPoints { min: 2, found: n });
    }
    Ok(())
}

/// Redraw until the configuration clears the minimum separation.
fn with_retries(mut draw: impl FnMut() -> Vec<C64>) -> Result<PointSet> {
    let mut last = None;
    for _ in 0..RETRY_CAP {
        match PointSet::new(draw()) {
            Ok(p) => return Ok(p),
            Err(e @ Error::DegenerateConfiguration { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("RETRY_CAP is positive"))
}

/// `n` points on `[0, 1]`. Even spacing uses `x_k = k/(n−1)`; random
/// spacing pins `0` and `1` and draws the interior uniformly, sorted.
pub fn generate_collinear(n: usize, spacing: Spacing) -> Result<PointSet> {
    check_count(n)?;
    match spacing {
        Spacing::Even => {
            let xs: Vec<f64> = (0..n).map(|k| k as f64 / (n - 1) as f64).collect();
            PointSet::from_reals(&xs)
        }
        Spacing::Random { seed } => {
            let mut rng = rng_for(seed, STREAM_LINE);
            with_retries(|| {
                let mut xs: Vec<f64> = (0..n - 2).map(|_| rng.random::<f64>()).collect();
                xs.sort_by(f64::total_cmp);
                std::iter::once(0.0)
                    .chain(xs)
                    .chain(std::iter::once(1.0))
                    .map(|x| C64::new(x, 0.0))
                    .collect()
            })
        }
    }
}

/// `n` points on the circle of the given radius. Even spacing places
/// `z_k = R e^{i(θ₀ + 2πk/n)}`; random spacing draws the angles uniformly
/// and sorts them.
pub fn generate_circle(n: usize, spacing: Spacing, radius: f64, phase: f64) -> Result<PointSet> {
    check_count(n)?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "circle radius must be positive, got {radius}"
        )));
    }
    let on_circle = |t: f64| C64::from_polar(radius, t);
    match spacing {
        Spacing::Even => PointSet::new((0..n).map(|k| on_circle(phase + TAU * k as f64 / n as f64)).collect()),
        Spacing::Random { seed } => {
            let mut rng = rng_for(seed, STREAM_CIRCLE);
            with_retries(|| {
                let mut ts: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * TAU).collect();
                ts.sort_by(f64::total_cmp);
                ts.into_iter().map(|t| on_circle(phase + t)).collect()
            })
        }
    }
}

/// Cumulative arclength table of a polar curve over `[θ₀, θ₀ + 2π]`
/// (trapezoid rule on `√(r² + r'²)`).
struct ArclengthTable {
    theta0: f64,
    step: f64,
    cumulative: Vec<f64>,
}

impl ArclengthTable {
    fn new(curve: &PolarCurve, theta0: f64, samples: usize) -> Self {
        let step = TAU / samples as f64;
        let mut cumulative = Vec::with_capacity(samples + 1);
        cumulative.push(0.0);
        let mut prev = curve.speed(theta0);
        let mut acc = 0.0;
        for i in 1..=samples {
            let s = curve.speed(theta0 + step * i as f64);
            acc += 0.5 * step * (prev + s);
            cumulative.push(acc);
            prev = s;
        }
        Self {
            theta0,
            step,
            cumulative,
        }
    }

    fn total(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Arclength from θ₀ to θ.
    fn length_at(&self, theta: f64) -> f64 {
        let x = (theta - self.theta0) / self.step;
        let k = (x.floor() as usize).min(self.cumulative.len() - 2);
        let w = x - k as f64;
        self.cumulative[k] + w * (self.cumulative[k + 1] - self.cumulative[k])
    }

    /// Angle at which the arclength from θ₀ reaches `target`.
    fn theta_at(&self, target: f64) -> f64 {
        let k = self
            .cumulative
            .partition_point(|&l| l <= target)
            .clamp(1, self.cumulative.len() - 1);
        let (l0, l1) = (self.cumulative[k - 1], self.cumulative[k]);
        let w = if l1 > l0 { (target - l0) / (l1 - l0) } else { 0.0 };
        self.theta0 + self.step * ((k - 1) as f64 + w)
    }
}

/// Angles of `n` points on the curve for the given sampling.
pub fn curve_parameters(spec: &CurveSpec, n: usize) -> Vec<f64> {
    match spec.sampling {
        CurveSampling::EvenParameter => (0..n).map(|k| spec.phase + TAU * k as f64 / n as f64).collect(),
        CurveSampling::EvenArclength => {
            let table = ArclengthTable::new(&spec.curve, spec.phase, ARCLENGTH_SAMPLES);
            let total = table.total();
            (0..n).map(|k| table.theta_at(total * k as f64 / n as f64)).collect()
        }
        CurveSampling::RandomParameter { seed } => {
            let mut rng = rng_for(seed, STREAM_CURVE);
            let mut ts: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * TAU).collect();
            ts.sort_by(f64::total_cmp);
            ts.into_iter().map(|t| spec.phase + t).collect()
        }
    }
}

pub fn generate_polar_curve(spec: &CurveSpec, n: usize) -> Result<PointSet> {
    check_count(n)?;
    match spec.sampling {
        CurveSampling::RandomParameter { seed } => {
            let mut rng = rng_for(seed, STREAM_CURVE);
            with_retries(|| {
                let mut ts: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * TAU).collect();
                ts.sort_by(f64::total_cmp);
                ts.into_iter().map(|t| spec.curve.point_at(spec.phase + t)).collect()
            })
        }
        _ => PointSet::new(
            curve_parameters(spec, n)
                .into_iter()
                .map(|t| spec.curve.point_at(t))
                .collect(),
        ),
    }
}

/// Arclength along the curve between consecutive angles, measured on the
/// same table the generator uses.
pub fn arclength_gaps(curve: &PolarCurve, phase: f64, thetas: &[f64]) -> Vec<f64> {
    let table = ArclengthTable::new(curve, phase, ARCLENGTH_SAMPLES);
    let total = table.total();
    let lengths: Vec<f64> = thetas.iter().map(|&t| table.length_at(t)).collect();
    (0..lengths.len())
        .map(|k| {
            if k + 1 < lengths.len() {
                lengths[k + 1] - lengths[k]
            } else {
                total - lengths[k] + lengths[0]
            }
        })
        .collect()
}

pub fn generate_random_plane(n: usize, region: &RegionSpec) -> Result<PointSet> {
    check_count(n)?;
    let RegionSpec {
        x_min,
        x_max,
        y_min,
        y_max,
        seed,
    } = *region;
    if !(x_max > x_min && y_max > y_min) || ![x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "empty region [{x_min}, {x_max}] × [{y_min}, {y_max}]"
        )));
    }
    let mut rng = rng_for(seed, STREAM_PLANE);
    with_retries(|| {
        (0..n)
            .map(|_| {
                C64::new(
                    x_min + (x_max - x_min) * rng.random::<f64>(),
                    y_min + (y_max - y_min) * rng.random::<f64>(),
                )
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn collinear_even() {
        let p = generate_collinear(5, Spacing::Even).unwrap();
        let xs: Vec<f64> = p.iter().map(|z| z.re).collect();
        assert_eq!(xs, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(matches!(
            generate_collinear(1, Spacing::Even),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn collinear_random_is_reproducible_and_pinned() {
        let a = generate_collinear(8, Spacing::Random { seed: 42 }).unwrap();
        let b = generate_collinear(8, Spacing::Random { seed: 42 }).unwrap();
        let c = generate_collinear(8, Spacing::Random { seed: 43 }).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a[0], C64::new(0.0, 0.0));
        assert_eq!(a[7], C64::new(1.0, 0.0));
        assert!(a.windows(2).all(|w| w[1].re > w[0].re));
    }

    #[test]
    fn circle_even_and_random() {
        let p = generate_circle(6, Spacing::Even, 2.0, 0.0).unwrap();
        assert!(p.iter().all(|z| (z.norm() - 2.0).abs() < 1e-15));
        assert!((p[1] - C64::from_polar(2.0, PI / 3.0)).norm() < 1e-15);
        let r = generate_circle(6, Spacing::Random { seed: 7 }, 1.0, 0.0).unwrap();
        assert!(r.iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
        assert!(generate_circle(6, Spacing::Even, 0.0, 0.0).is_err());
    }

    #[test]
    fn curve_radii() {
        assert!((PolarCurve::Flower.point_at(0.0) - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(PolarCurve::Flower.point_at(PI / 4.0).norm() < 1e-15);
        assert!((PolarCurve::FigureEight.point_at(PI) - C64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!(PolarCurve::FigureEight.point_at(PI / 2.0).norm() < 1e-15);
    }

    #[test]
    fn flower_origin_crossings_are_rejected() {
        let spec = CurveSpec {
            curve: PolarCurve::Flower,
            phase: PI / 4.0,
            sampling: CurveSampling::EvenParameter,
        };
        assert!(matches!(
            generate_polar_curve(&spec, 4),
            Err(Error::DegenerateConfiguration { .. })
        ));
    }

    #[test]
    fn arclength_spacing_is_even() {
        for curve in [PolarCurve::Flower, PolarCurve::FigureEight] {
            let spec = CurveSpec {
                curve: curve.clone(),
                phase: 0.0,
                sampling: CurveSampling::EvenArclength,
            };
            let thetas = curve_parameters(&spec, 7);
            let gaps = arclength_gaps(&curve, 0.0, &thetas);
            let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
            for g in &gaps {
                assert!((g - mean).abs() <= 1e-3 * mean, "{gaps:?}");
            }
            generate_polar_curve(&spec, 7).unwrap();
        }
    }

    #[test]
    fn circle_arclength_total() {
        let unit = CustomCurve::new(&[(0.0, 1.0), (TAU, 1.0)]).unwrap();
        let table = ArclengthTable::new(&PolarCurve::Custom(unit), 0.0, 1000);
        assert!((table.total() - TAU).abs() < 1e-12);
    }

    #[test]
    fn custom_curve_validation() {
        assert!(CustomCurve::new(&[(0.0, 1.0)]).is_err());
        assert!(CustomCurve::new(&[(0.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(CustomCurve::new(&[(0.0, 1.0), (3.0, 1.0), (2.0, 1.0), (TAU, 1.0)]).is_err());
        let c = CustomCurve::new(&[(0.0, 1.0), (PI, 3.0), (TAU, 1.0)]).unwrap();
        assert!((c.radius(PI / 2.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn random_plane_stays_in_region() {
        let region = RegionSpec {
            x_min: -1.0,
            x_max: 2.0,
            y_min: 3.0,
            y_max: 4.0,
            seed: 9,
        };
        let p = generate_random_plane(20, &region).unwrap();
        assert!(p
            .iter()
            .all(|z| (-1.0..2.0).contains(&z.re) && (3.0..4.0).contains(&z.im)));
        assert_eq!(p, generate_random_plane(20, &region).unwrap());
    }

    #[test]
    fn streams_differ_between_generators() {
        let line = generate_collinear(4, Spacing::Random { seed: 1 }).unwrap();
        let plane = generate_random_plane(4, &RegionSpec::unit_square(1)).unwrap();
        assert_ne!(line[1].re, plane[0].re);
    }
}
