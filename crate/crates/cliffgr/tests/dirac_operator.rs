use cliffgr::chart::{Geometry, Spacetime, Tetrad};
use cliffgr::dirac::*;
use cliffgr::einstein::{ricci_and_einstein, EnergyMomentum};
use cliffgr::{Jet, Multivector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SCHW: Spacetime = Spacetime::Schwarzschild { m: 1.0 };

fn geometries() -> Vec<(Spacetime, [f64; 4])> {
    vec![
        (SCHW, [0.0, 4.0, 1.0, 0.3]),
        (
            Spacetime::SchwarzschildIsotropic { m: 1.0 },
            [0.0, 2.0, 1.5, -1.0],
        ),
        (Spacetime::EinsteinDeSitter, [1.4, 0.2, 0.3, 0.1]),
        (Spacetime::MinkowskiSpherical, [0.0, 3.0, 1.1, 0.2]),
    ]
}

#[test]
fn operator_identities_on_random_multiforms() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (s, x) in geometries() {
        let geo = Geometry::at(&s, x).unwrap();
        for grades in [&[0][..], &[1], &[2], &[3], &[4], &[0, 1, 2, 3, 4]] {
            let a = random_multiform(&mut rng, grades);
            let r = operator_residuals(&a, &geo);
            let tag = format!("{s:?} grades {grades:?}");
            assert!(r.split < 1e-10, "{tag}");
            assert!(r.d_routes < 1e-9, "{tag}");
            assert!(r.delta_routes < 1e-9, "{tag}");
            assert!(r.dd < 1e-9 && r.deltadelta < 1e-9, "{tag}");
            assert!(r.square_split < 1e-8 && r.hodge_laplacian < 1e-8, "{tag}");
            assert!(r.star_commutes < 1e-8 && r.delta_star < 1e-8, "{tag}");
        }
    }
}

#[test]
fn dirac_of_function_is_its_gradient() {
    let geo = Geometry::at(&Spacetime::MinkowskiCartesian, [0.0, 1.0, 2.0, 3.0]).unwrap();
    let x = Jet::coordinates([0.0, 1.0, 2.0, 3.0]);
    // f = t² − x y; ∂f = θ^μ ∂_μ f in an orthonormal Cartesian frame
    let f = Multivector::scalar(x[0] * x[0] - x[1] * x[2]);
    let got = dirac(&f, &geo).values();
    let want = Multivector::vector([0.0, -2.0, -1.0, 0.0]);
    assert!((got - want).norm() < 1e-14, "{got:?}");
}

#[test]
fn ricci_operator_sign() {
    for (s, x) in geometries() {
        let geo = Geometry::at(&s, x).unwrap();
        let ein = ricci_and_einstein(&geo);
        let (standard, _) = ricci_operator_residual(&geo, &ein, RicciSign::Standard);
        assert!(standard < 1e-9, "{s:?}");
    }
    let geo = Geometry::at(&Spacetime::EinsteinDeSitter, [1.4, 0.2, 0.3, 0.1]).unwrap();
    let ein = ricci_and_einstein(&geo);
    let (printed, _) = ricci_operator_residual(&geo, &ein, RicciSign::Printed);
    assert!(printed > 1e-2);
}

#[test]
fn tetrad_wave_equation() {
    for (s, x) in geometries() {
        let geo = Geometry::at(&s, x).unwrap();
        let tm = EnergyMomentum::from_tetrad(&s, x).unwrap();
        let w = tetrad_wave(&geo, &tm, RicciSign::Standard);
        assert!(w.residual < 1e-8, "{s:?}: {}", w.residual);
    }
}

#[test]
fn box_plus_trace_does_not_vanish_on_schwarzschild() {
    let x = [0.0, 4.0, 1.0, 0.3];
    let geo = Geometry::at(&SCHW, x).unwrap();
    let tm = EnergyMomentum::from_tetrad(&SCHW, x).unwrap();
    let w = tetrad_wave(&geo, &tm, RicciSign::Standard);
    assert!(w.box_plus_trace > 1e-2, "{}", w.box_plus_trace);
    let flat = Geometry::at(&Spacetime::MinkowskiCartesian, [0.0, 1.0, 1.0, 1.0]).unwrap();
    let tm0 =
        EnergyMomentum::from_tetrad(&Spacetime::MinkowskiCartesian, [0.0, 1.0, 1.0, 1.0]).unwrap();
    assert!(tetrad_wave(&flat, &tm0, RicciSign::Standard).box_plus_trace < 1e-14);
}

#[test]
fn coordinate_differentials_obey_their_wave_equation() {
    for (s, x) in geometries() {
        let geo = Geometry::at(&s, x).unwrap();
        let ein = ricci_and_einstein(&geo);
        let tm = EnergyMomentum::from_tetrad(&s, x).unwrap();
        let w = coordinate_wave(&geo, &tm, &ein, RicciSign::Standard);
        assert!(w.residual < 1e-8, "{s:?}");
    }
    // Cartesian Minkowski coordinates are harmonic, spherical ones are not
    let cart = Geometry::at(&Spacetime::MinkowskiCartesian, [0.0, 1.0, 2.0, 3.0]).unwrap();
    let z =
        EnergyMomentum::from_tetrad(&Spacetime::MinkowskiCartesian, [0.0, 1.0, 2.0, 3.0]).unwrap();
    let w = coordinate_wave(&cart, &z, &ricci_and_einstein(&cart), RicciSign::Standard);
    assert!(w.harmonic_defect < 1e-14 && w.reduced < 1e-14);
    let sph = Geometry::at(&Spacetime::MinkowskiSpherical, [0.0, 3.0, 1.1, 0.2]).unwrap();
    let w = coordinate_wave(&sph, &z, &ricci_and_einstein(&sph), RicciSign::Standard);
    assert!(w.harmonic_defect > 1e-2);
}

#[test]
fn potential_wave_reproduces_weitzenbock() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (s, x) in geometries() {
        let geo = Geometry::at(&s, x).unwrap();
        let ein = ricci_and_einstein(&geo);
        let m = random_multiform(&mut rng, &[1]);
        let a: [Jet; 4] = std::array::from_fn(|mu| m.c[1 << mu]);
        assert!(
            potential_wave(&a, &geo, &ein).residual(RicciSign::Standard) < 1e-8,
            "{s:?}"
        );
    }
}

#[test]
fn maxwell_equations_from_a_potential() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (s, x) in geometries() {
        let geo = Geometry::at(&s, x).unwrap();
        let f = differential(&random_multiform(&mut rng, &[1]), &geo);
        let j = dirac(&f, &geo);
        let r = maxwell(&f, &j, &geo);
        assert!(
            r.df < 1e-9 && r.delta_f < 1e-9 && r.dual < 1e-8,
            "{s:?}: {r:?}"
        );
    }
}

#[test]
fn coordinate_one_forms_round_trip() {
    let (s, x) = (SCHW, [0.0, 4.0, 1.0, 0.3]);
    let geo = Geometry::at(&s, x).unwrap();
    for mu in 0..4 {
        let th = coordinate_differential_form(mu, &geo);
        let mut a = [Jet::zero(); 4];
        a[mu] = Jet::constant(1.0);
        assert!((from_coordinate_one_form(&a, &geo) - th).values().norm() < 1e-14);
        assert!(differential(&th, &geo).values().norm() < 1e-10);
    }
    assert!(s.check_domain(x).is_ok());
}
