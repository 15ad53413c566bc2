mod common;

use common::*;
use equilibria::configuration::{build_matrix, normality_defect_routes};
use equilibria::linalg::{self, nullspace, DEFAULT_REL_TOL};
use equilibria::C64;
use proptest::prelude::*;

proptest! {
    #[test]
    fn skew_symmetry_is_exact(p in config(2..12)) {
        let a = build_matrix(&p);
        for i in 0..p.len() {
            prop_assert_eq!(a.get(i, i), C64::new(0.0, 0.0));
            for j in 0..p.len() {
                prop_assert_eq!(a.get(i, j) + a.get(j, i), C64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn translation_invariance(p in config(2..10), w in shift()) {
        let a = build_matrix(&p);
        let b = build_matrix(&p.transformed(C64::new(1.0, 0.0), w).unwrap());
        for i in 0..p.len() {
            for j in 0..p.len() {
                prop_assert!((a.get(i, j) - b.get(i, j)).norm() <= 1e-12 * a.get(i, j).norm());
            }
        }
    }

    #[test]
    fn scaling_covariance(p in config(2..10), c in similarity()) {
        let a = build_matrix(&p);
        let b = build_matrix(&p.transformed(c, C64::new(0.0, 0.0)).unwrap());
        let expected = a.entries().scale(c.inv());
        let rel = b.entries().sub(&expected).max_abs() / expected.max_abs();
        prop_assert!(rel <= 1e-12, "relative error {rel:e}");
    }

    #[test]
    fn normality_routes_agree(p in config(2..10)) {
        let d = normality_defect_routes(&build_matrix(&p));
        prop_assert!((d.direct - d.via_split).abs() <= 1e-10 * d.direct.max(1e-300) || d.direct < 1e-12,
            "{} vs {}", d.direct, d.via_split);
    }

    #[test]
    fn singular_values_pair_and_rank_is_even(p in config(2..12)) {
        let a = build_matrix(&p);
        let r = nullspace(&a, DEFAULT_REL_TOL).unwrap();
        prop_assert_eq!(r.rank % 2, 0);
        let s = linalg::svd(&a).unwrap();
        for k in (0..r.rank).step_by(2) {
            prop_assert!(s.sigma[k] - s.sigma[k + 1] <= 1e-8 * s.sigma[0]);
        }
        for i in 0..p.len() {
            let av = a.apply(&s.v.column(i));
            let su: Vec<C64> = s.u.column(i).iter().map(|u| u * s.sigma[i]).collect();
            prop_assert!(max_diff(&av, &su) <= 1e-10 * s.sigma[0]);
        }
    }

    #[test]
    fn singular_values_scale_inversely(p in config(2..10), c in similarity()) {
        let s = linalg::svd(&build_matrix(&p)).unwrap().sigma;
        let t = linalg::svd(&build_matrix(&p.transformed(c, C64::new(0.0, 0.0)).unwrap())).unwrap().sigma;
        for (a, b) in s.iter().zip(&t) {
            prop_assert!((a / c.norm() - b).abs() <= 1e-10 * s[0] / c.norm());
        }
    }

    #[test]
    fn eigenvalues_pair_under_negation(p in config(2..10)) {
        let e = linalg::eigenvalues(&build_matrix(&p)).unwrap();
        let n = e.lambdas.len();
        let mut used = vec![false; n];
        for l in &e.lambdas {
            let (j, d) = (0..n)
                .filter(|&j| !used[j])
                .map(|j| (j, (e.lambdas[j] + l).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            used[j] = true;
            prop_assert!(d <= 1e-8 * e.max_abs().max(1.0), "−{l} missing, closest {d:e}");
        }
    }

    #[test]
    fn eigenpair_residuals(p in config(2..10)) {
        let a = build_matrix(&p);
        let e = linalg::eigenvalues(&a).unwrap();
        let fro = a.entries().frobenius_norm();
        let scale = if e.max_abs() > 1e-8 * fro { e.max_abs() } else { fro };
        for r in &e.residuals {
            prop_assert!(*r <= 1e-8 * scale, "residual {r:e}, scale {scale:e}");
        }
    }

    #[test]
    fn collinear_matrices_are_normal_with_imaginary_spectrum(p in collinear(2..10)) {
        let a = build_matrix(&p);
        prop_assert!(a.is_real());
        let d = normality_defect_routes(&a);
        prop_assert!(d.direct <= 1e-12 * a.entries().frobenius_norm().powi(2));
        let e = linalg::eigenvalues(&a).unwrap();
        let lmax = e.max_abs();
        prop_assert!(e.lambdas.iter().all(|l| l.re.abs() <= 1e-10 * lmax));
        let mut mods: Vec<f64> = e.lambdas.iter().map(|l| l.norm()).collect();
        mods.sort_by(|a, b| b.total_cmp(a));
        let s = linalg::svd(&a).unwrap().sigma;
        for (m, s) in mods.iter().zip(&s) {
            prop_assert!((m - s).abs() <= 1e-8 * lmax, "|λ| = {m}, σ = {s}");
        }
    }

    #[test]
    fn pfaffian_squares_to_determinant(p in prop_oneof![config(2), config(4), config(6), config(8), config(10)]) {
        let a = build_matrix(&p);
        let pf = linalg::pfaffian(&a).unwrap();
        let det = linalg::determinant(&a);
        prop_assert!((pf * pf - det).norm() <= 1e-8 * det.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn odd_configurations_have_a_kernel(p in odd_config()) {
        let r = nullspace(&build_matrix(&p), DEFAULT_REL_TOL).unwrap();
        prop_assert!(r.nullity >= 1);
    }
}

#[test]
fn collinear_three_eigenvalues() {
    let (x1, x2, x3) = (0.0, 0.3, 1.0);
    let p = equilibria::PointSet::from_reals(&[x1, x2, x3]).unwrap();
    let e = linalg::eigenvalues(&build_matrix(&p)).unwrap();
    let w = (x2 - x1).powi(-2) + (x3 - x2).powi(-2) + (x3 - x1).powi(-2);
    let mut im: Vec<f64> = e.lambdas.iter().map(|l| l.im).collect();
    im.sort_by(f64::total_cmp);
    assert!((im[0] + w.sqrt()).abs() < 1e-12 && im[1].abs() < 1e-12 && (im[2] - w.sqrt()).abs() < 1e-12);
}

#[test]
fn large_pfaffian_uses_tridiagonal_route() {
    let p =
        equilibria::generators::generate_random_plane(12, &equilibria::generators::RegionSpec::unit_square(4)).unwrap();
    let a = build_matrix(&p);
    let pf = linalg::pfaffian(&a).unwrap();
    let det = linalg::determinant(&a);
    assert!((pf * pf - det).norm() <= 1e-8 * det.norm());
}
