mod common;

use std::f64::consts::PI;

use common::*;
use equilibria::configuration::PointSet;
use equilibria::dynamics::{integrate, single_orbit, velocities, OrbitParams};
use equilibria::equilibrium::{
    center_of_vorticity, classify_far_field, solve_strengths, FlowKind, DEFAULT_CLASSIFY_TOL,
};
use equilibria::exec::Execution;
use equilibria::field::{far_field_deviation, trace_streamline, velocity_at, velocity_grid, StreamlineOptions, Window};
use equilibria::generators::{generate_random_plane, RegionSpec};
use equilibria::linalg::DEFAULT_REL_TOL;
use equilibria::{Error, C64, DEFAULT_MIN_SEPARATION};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y)| C64::new(x, y))
}

proptest! {
    #[test]
    fn equilibria_start_at_rest(p in odd_config()) {
        let s = solve_strengths(&p, DEFAULT_REL_TOL).unwrap();
        let v = velocities(&p, &s.strengths);
        prop_assert!(v.iter().all(|v| v.norm() <= 1e-12 * s.strengths.max_abs()));
    }

    #[test]
    fn rotating_strengths_rotates_velocities(p in config(2..9), g in prop::collection::vec(point(), 9)) {
        let g = &g[..p.len()];
        let gi: Vec<C64> = g.iter().map(|x| x * C64::i()).collect();
        let v = velocities(&p, g);
        let w = velocities(&p, &gi);
        for (v, w) in v.iter().zip(&w) {
            prop_assert!((w + C64::i() * v).norm() <= 1e-12 * v.norm().max(1e-300));
        }
    }

    #[test]
    fn field_is_orthogonal_under_rotation(p in config(2..9), g in prop::collection::vec(point(), 9), z in point()) {
        let g = &g[..p.len()];
        prop_assume!(p.iter().all(|q| (q - z).norm() > 1e-3));
        let gi: Vec<C64> = g.iter().map(|x| x * C64::i()).collect();
        let v = velocity_at(&p, g, z).unwrap();
        let w = velocity_at(&p, &gi, z).unwrap();
        prop_assert!((v * w.conj()).re.abs() <= 1e-12 * v.norm_sqr());
        prop_assert!((v.norm() - w.norm()).abs() <= 1e-12 * v.norm());
    }

    #[test]
    fn field_is_linear(p in config(2..9), a in prop::collection::vec(point(), 9), b in prop::collection::vec(point(), 9), z in point()) {
        let n = p.len();
        prop_assume!(p.iter().all(|q| (q - z).norm() > 1e-3));
        let sum: Vec<C64> = a[..n].iter().zip(&b[..n]).map(|(x, y)| x + y).collect();
        let lhs = velocity_at(&p, &sum, z).unwrap();
        let rhs = velocity_at(&p, &a[..n], z).unwrap() + velocity_at(&p, &b[..n], z).unwrap();
        let scale = velocity_at(&p, &a[..n], z).unwrap().norm() + velocity_at(&p, &b[..n], z).unwrap().norm();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn orbit_satisfies_its_odes(gr in -1.0..1.0f64, gi in 0.0..1.0f64, r0 in 0.5..2.0f64, t in 0.01..1.0f64) {
        let p = OrbitParams { gamma: C64::new(gr, gi), r0, theta0: 0.4 };
        let h = 1e-5;
        let (r_lo, th_lo) = single_orbit(&p, t - h).unwrap();
        let (r_hi, th_hi) = single_orbit(&p, t + h).unwrap();
        let (r, _) = single_orbit(&p, t).unwrap();
        prop_assert!(((r_hi - r_lo) / (2.0 * h) - gi / (2.0 * PI * r)).abs() <= 1e-6);
        prop_assert!(((th_hi - th_lo) / (2.0 * h) - gr / (2.0 * PI * r * r)).abs() <= 1e-6);
    }

    #[test]
    fn streamline_vertices_are_spaced_by_step(p in odd_config(), z in point()) {
        let s = solve_strengths(&p, DEFAULT_REL_TOL).unwrap();
        prop_assume!(p.iter().all(|q| (q - z).norm() > 0.05));
        let opts = StreamlineOptions { step: 0.01, max_steps: 300, ..Default::default() };
        let line = trace_streamline(&p, &s.strengths, z, &opts).unwrap();
        for w in line.vertices.windows(2) {
            prop_assert!(w[1].is_finite());
            prop_assert!((w[1] - w[0]).norm() <= 0.01 * (1.0 + 1e-9));
        }
    }
}

#[test]
fn rk4_is_fourth_order() {
    let z = [C64::new(-0.5, 0.0), C64::new(0.5, 0.0)];
    let g = [C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
    let t = 2.0;
    let dt = 0.1;
    let reference = integrate(&z, &g, t, dt / 8.0).unwrap();
    let err = |h: f64| {
        let run = integrate(&z, &g, t, h).unwrap();
        max_diff(run.last(), reference.last())
    };
    let ratio = err(dt) / err(dt / 2.0);
    assert!((ratio - 16.0).abs() < 2.0, "ratio {ratio}");
}

#[test]
fn trajectory_times_increase() {
    let z = [C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.2, 0.7)];
    let g = [C64::new(1.0, 0.2), C64::new(-0.4, 0.0), C64::new(0.3, -0.1)];
    let run = integrate(&z, &g, 0.25, 0.01).unwrap();
    assert!(run.times.windows(2).all(|w| w[1] > w[0]));
    assert!(run.positions.iter().flatten().all(|z| z.is_finite()));
    assert_eq!(run.times.len(), run.positions.len());
}

#[test]
fn close_approach_is_logged() {
    let z = [C64::new(0.0, 0.0), C64::new(5e-9, 0.0)];
    let g = [C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
    let run = integrate(&z, &g, 1e-20, 1e-20).unwrap();
    assert_eq!(run.events.len(), 1);
    assert!(!run.events[0].fatal);
    let z = [C64::new(0.0, 0.0), C64::new(5e-10, 0.0)];
    assert!(matches!(integrate(&z, &g, 1.0, 1e-3), Err(Error::CollisionAbort(_))));
}

#[test]
fn grid_flags_exactly_the_singular_nodes() {
    let p = PointSet::new(vec![C64::new(0.0, 0.0), C64::new(0.5, 0.0), C64::new(1.0, 0.0)]).unwrap();
    let g = [C64::new(1.0, 0.0), C64::new(-0.5, 0.0), C64::new(1.0, 0.0)];
    let w = Window {
        x_min: -0.5,
        x_max: 1.5,
        y_min: -1.0,
        y_max: 1.0,
    };
    let grid = velocity_grid(&p, &g, &w, 41, 21, Execution::Parallel).unwrap();
    let mut flagged = 0;
    for s in &grid.samples {
        let near = p.iter().any(|q| (q - s.position).norm() < DEFAULT_MIN_SEPARATION);
        assert_eq!(s.singular, near);
        assert!(s.velocity.is_finite());
        if s.singular {
            flagged += 1;
        }
    }
    assert_eq!(flagged, 3);
    let seq = velocity_grid(&p, &g, &w, 41, 21, Execution::Sequential).unwrap();
    let bits = |g: &equilibria::field::FieldGrid| -> Vec<(u64, u64)> {
        g.samples
            .iter()
            .map(|s| (s.velocity.re.to_bits(), s.velocity.im.to_bits()))
            .collect()
    };
    assert_eq!(bits(&grid), bits(&seq));
}

#[test]
fn far_field_decay_and_classification_agree() {
    for seed in 0..20 {
        let p = generate_random_plane(7, &RegionSpec::unit_square(seed)).unwrap();
        let s = solve_strengths(&p, DEFAULT_REL_TOL).unwrap();
        let class = classify_far_field(&s.strengths, DEFAULT_CLASSIFY_TOL);
        let reach = center_of_vorticity(&p, &s.strengths)
            .map(|cv| p.iter().map(|z| (z - cv.value).norm()).fold(p.diameter(), f64::max))
            .unwrap_or(1.0);
        match far_field_deviation(&p, &s.strengths, 50.0 * reach) {
            Ok(d) => {
                assert!((d.ratio - 4.0).abs() < 0.5, "seed {seed}: ratio {}", d.ratio);
                assert_eq!(d.total_strength, class.total_strength);
                // the far field seen at large radius turns the way ΣΓ says
                let z = d.center + C64::from_polar(1e4, 0.3);
                let v = velocity_at(&p, &s.strengths, z).unwrap();
                let radial = (v * (z - d.center).conj()).re;
                let swirl = (v * (z - d.center).conj()).im;
                if class.kind.is_spiral() || class.kind == FlowKind::Source || class.kind == FlowKind::Sink {
                    assert_eq!(radial > 0.0, class.total_strength.im > 0.0);
                }
                assert_eq!(swirl > 0.0, class.total_strength.re > 0.0);
            }
            Err(Error::UndefinedFarField) => assert_eq!(class.kind, FlowKind::Null),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn stagnation_point_between_vortices() {
    let p = [C64::new(0.0, 0.0), C64::new(0.5, 0.0), C64::new(1.0, 0.0)];
    let g = [C64::new(1.0, 0.0), C64::new(-0.5, 0.0), C64::new(1.0, 0.0)];
    for z in [C64::new(0.5, 0.5 / 3f64.sqrt()), C64::new(0.5, -0.5 / 3f64.sqrt())] {
        assert!(velocity_at(&p, &g, z).unwrap().norm() < 1e-14);
    }
}
