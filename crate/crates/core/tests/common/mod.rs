#![allow(dead_code)]

use equilibria::{PointSet, C64};
use proptest::prelude::*;

/// Points in `[-1, 1]²` at least `1e-2` apart.
pub fn config(n: impl Into<prop::collection::SizeRange>) -> impl Strategy<Value = PointSet> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n).prop_filter_map("points too close", |v| {
        PointSet::with_min_separation(v.into_iter().map(|(x, y)| C64::new(x, y)).collect(), 1e-2).ok()
    })
}

pub fn odd_config() -> impl Strategy<Value = PointSet> {
    prop_oneof![config(3), config(5), config(7), config(9)]
}

pub fn collinear(n: impl Into<prop::collection::SizeRange>) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(-1.0..1.0f64, n).prop_filter_map("points too close", |xs| {
        PointSet::with_min_separation(xs.into_iter().map(|x| C64::new(x, 0.0)).collect(), 1e-2).ok()
    })
}

/// Nonzero complex factor with modulus in `[0.2, 5]`.
pub fn similarity() -> impl Strategy<Value = C64> {
    (0.2..5.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

pub fn shift() -> impl Strategy<Value = C64> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| C64::new(x, y))
}

pub fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
