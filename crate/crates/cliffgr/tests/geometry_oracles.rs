use cliffgr::chart::{
    builtin, FiniteDifference, Geometry, LocalLorentz, Spacetime, Tetrad, Transformed,
};
use cliffgr::forms::{riemann_coordinate, riemann_symmetry_residual};
use cliffgr::suites::geometry::{kretschmann_closed_form, kretschmann_from_christoffels};
use proptest::prelude::*;
use std::collections::BTreeMap;

const SCHW: Spacetime = Spacetime::Schwarzschild { m: 1.0 };

/// Nonzero Christoffel symbols of Schwarzschild in `(t, r, ϑ, φ)`, `Γ[α][ν][μ] = Γ^α_{νμ}`.
fn schwarzschild_christoffels(m: f64, r: f64, th: f64) -> [[[f64; 4]; 4]; 4] {
    let mut g = [[[0.0; 4]; 4]; 4];
    let f = 1.0 - 2.0 * m / r;
    let mut set = |a: usize, b: usize, c: usize, v: f64| {
        g[a][b][c] = v;
        g[a][c][b] = v;
    };
    set(0, 0, 1, m / (r * r * f));
    set(1, 0, 0, m * f / (r * r));
    set(1, 1, 1, -m / (r * r * f));
    set(1, 2, 2, -r * f);
    set(1, 3, 3, -r * f * th.sin().powi(2));
    set(2, 1, 2, 1.0 / r);
    set(2, 3, 3, -th.sin() * th.cos());
    set(3, 1, 3, 1.0 / r);
    set(3, 2, 3, th.cos() / th.sin());
    g
}

fn max_diff3(a: &[[[f64; 4]; 4]; 4], b: &[[[f64; 4]; 4]; 4]) -> f64 {
    let mut w: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                w = w.max((a[i][j][k] - b[i][j][k]).abs());
            }
        }
    }
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn christoffels_match_closed_form(r in 3.0f64..50.0, th in 0.2f64..2.9, ph in 0.0f64..6.0) {
        let geo = Geometry::at(&SCHW, [0.0, r, th, ph]).unwrap();
        let want = schwarzschild_christoffels(1.0, r, th);
        prop_assert!(max_diff3(&geo.christoffels(), &want) < 1e-12);
        prop_assert!(max_diff3(&geo.christoffels_from_frame(), &want) < 1e-12);
    }

    #[test]
    fn kretschmann_is_48_over_r6(r in 3.0f64..50.0, th in 0.2f64..2.9) {
        let geo = Geometry::at(&SCHW, [0.0, r, th, 0.4]).unwrap();
        let exact = 48.0 / r.powi(6);
        prop_assert!((geo.kretschmann() - exact).abs() / exact < 1e-10);
        prop_assert!((kretschmann_from_christoffels(&geo) - exact).abs() / exact < 1e-10);
    }

    #[test]
    fn schwarzschild_geometry_invariants(r in 3.0f64..50.0, th in 0.2f64..2.9) {
        let geo = Geometry::at(&SCHW, [0.0, r, th, 1.0]).unwrap();
        prop_assert!(geo.torsion_residual() < 1e-10);
        prop_assert!(geo.metric_compatibility_residual() < 1e-10);
        prop_assert!(geo.bianchi_residual() < 1e-8);
        prop_assert!(riemann_symmetry_residual(&riemann_coordinate(&geo)) < 1e-10);
        for row in geo.ricci_tensor() {
            for v in row {
                prop_assert!(v.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn local_rotation_leaves_metric_and_curvature_invariant(angle in -3.0f64..3.0, k in -0.2f64..0.2) {
        let x = [0.0, 6.0, 1.1, 0.2];
        let rotated = Transformed::new(SCHW, LocalLorentz::Rotation { plane: (2, 3), angle, gradient: [0.0, k, 0.0, k] });
        let g0 = Geometry::at(&SCHW, x).unwrap();
        let g1 = Geometry::at(&rotated, x).unwrap();
        let (m0, m1) = (g0.metric(), g1.metric());
        for mu in 0..4 {
            for nu in 0..4 {
                prop_assert!((m0[mu][nu] - m1[mu][nu]).abs() < 1e-12);
            }
        }
        prop_assert!((g0.kretschmann() - g1.kretschmann()).abs() < 1e-12);
    }
}

#[test]
fn einstein_de_sitter_kretschmann_and_density() {
    let eds = Spacetime::EinsteinDeSitter;
    for t in [0.5, 1.0, 2.0, 4.0] {
        let x = [t, 0.3, -0.2, 0.1];
        let geo = Geometry::at(&eds, x).unwrap();
        // flat FRW: K = 12((ä/a)² + (ȧ/a)⁴) with a = t^{2/3}
        let (h, acc) = (2.0 / (3.0 * t), -2.0 / (9.0 * t * t));
        let k = 12.0 * (acc * acc + h.powi(4));
        assert!((geo.kretschmann() - k).abs() / k < 1e-10);
        assert_eq!(
            kretschmann_closed_form(&eds, x),
            Some(80.0 / (27.0 * t.powi(4)))
        );
        let g = geo.einstein_tensor();
        assert!((g[0][0] - 3.0 * h * h).abs() < 1e-10);
    }
}

#[test]
fn isotropic_and_deformed_charts_share_the_areal_kretschmann() {
    let iso = Spacetime::SchwarzschildIsotropic { m: 1.0 };
    let def = Spacetime::SchwarzschildDeformed { m: 1.0, alpha: 1.0 };
    for rho in [3.0, 7.5, 20.0] {
        let u = rho / 3f64.sqrt();
        let x = [0.0, u, u, u];
        let areal = rho * (1.0 + 0.5 / rho).powi(2);
        let k = Geometry::at(&iso, x).unwrap().kretschmann();
        assert!((k - 48.0 / areal.powi(6)).abs() / k < 1e-9);
        let kd = Geometry::at(&def, x).unwrap().kretschmann();
        let want = kretschmann_closed_form(&def, x).unwrap();
        assert!((kd - want).abs() / want < 1e-9);
    }
}

#[test]
fn minkowski_charts_are_flat() {
    for name in ["minkowski", "minkowski_spherical"] {
        let s = builtin(name, &BTreeMap::new()).unwrap();
        let geo = Geometry::at(&s, [0.3, 2.0, 1.0, 0.5]).unwrap();
        assert!(geo.kretschmann().abs() < 1e-14);
        for mu in 0..4 {
            for nu in 0..4 {
                assert!(geo.curvature(mu, nu).norm() < 1e-14);
            }
        }
    }
}

#[test]
fn static_frame_connection_has_known_boost_part() {
    let (m, r) = (1.0, 4.0);
    let geo = Geometry::at(&SCHW, [0.0, r, 1.0, 0.3]).unwrap();
    let conn = geo.connection_coeffs();
    // D_{e_0} e_0 = a e_1 with proper acceleration a = m/(r²√f)
    let a = m / (r * r * (1.0 - 2.0 * m / r).sqrt());
    assert!((conn[0][1][0] - a).abs() < 1e-12);
}

#[test]
fn points_inside_horizon_are_rejected() {
    assert!(SCHW.check_domain([0.0, 1.5, 1.0, 0.0]).is_err());
    assert!(Geometry::at(&SCHW, [0.0, 1.0, 1.0, 0.0]).is_err());
}

#[test]
fn unknown_spacetime_is_an_error() {
    assert!(builtin("kerr", &BTreeMap::new()).is_err());
}

#[test]
fn finite_differences_converge_quadratically() {
    let x = [0.0, 5.0, 1.0, 0.3];
    let exact = Geometry::at(&SCHW, x).unwrap().christoffels();
    let err = |h: f64| {
        max_diff3(
            &Geometry::at(&FiniteDifference::with_step(SCHW, h), x)
                .unwrap()
                .christoffels(),
            &exact,
        )
    };
    let (e1, e2) = (err(2e-3), err(1e-3));
    let ratio = e1 / e2;
    assert!(
        (3.0..5.0).contains(&ratio),
        "error ratio {ratio} ({e1:e} / {e2:e})"
    );
}

#[test]
fn finite_difference_provider_matches_analytic_curvature() {
    let x = [0.0, 4.0, 1.0, 0.3];
    let exact = Geometry::at(&SCHW, x).unwrap();
    let fd = Geometry::at(&FiniteDifference::new(SCHW), x).unwrap();
    assert!(fd.torsion_residual() < 1e-6);
    assert!(fd.bianchi_residual() < 1e-4);
    assert!((fd.kretschmann() - exact.kretschmann()).abs() / exact.kretschmann() < 1e-5);
    let rich = Geometry::at(&FiniteDifference::new(SCHW).richardson(true), x).unwrap();
    assert!((rich.kretschmann() - exact.kretschmann()).abs() / exact.kretschmann() < 1e-5);
}
