#![allow(clippy::needless_range_loop)]

use cliffgr::chart::{Geometry, Spacetime};
use cliffgr::forms::*;
use cliffgr::{Jet, Multivector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GRADES: [usize; 5] = [0, 1, 2, 3, 4];

fn schwarzschild() -> Geometry {
    Geometry::at(&Spacetime::Schwarzschild { m: 1.0 }, [0.0, 4.5, 1.2, 0.7]).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn exterior_derivative_of_coordinate_forms() {
    let x = Jet::coordinates([0.4, 2.0, -1.0, 0.5]);
    let zero = Jet::zero();
    // d(x⁰ dx¹) = dx⁰ ∧ dx¹
    let a = CliffordForm::scalar_one_form([zero, x[0], zero, zero]);
    let da = a.exterior_d();
    assert_eq!(da.degree(), 2);
    assert_eq!(da.component(&[0, 1]), Multivector::one());
    assert_eq!(da.component(&[1, 0]), -Multivector::one());
    assert!(da.component(&[2, 3]).is_zero());
    // d(x¹x²) = x² dx¹ + x¹ dx²
    let f = CliffordForm::function(Flavor::Scalar, Multivector::scalar(x[1] * x[2]));
    let df = f.exterior_d();
    assert_eq!(df.component(&[1]), Multivector::scalar(-1.0));
    assert_eq!(df.component(&[2]), Multivector::scalar(2.0));
}

#[test]
fn wedge_of_scalar_one_forms_is_antisymmetric() {
    let one = Jet::constant(1.0);
    let zero = Jet::zero();
    let dx1 = CliffordForm::scalar_one_form([zero, one, zero, zero]);
    let dx2 = CliffordForm::scalar_one_form([zero, zero, one, zero]);
    let w = dx1.wedge_tensor(&dx2);
    assert_eq!(w.component(&[1, 2]), Multivector::one());
    assert!((&w + &dx2.wedge_tensor(&dx1)).max_norm() == 0.0);
    assert!(dx1.wedge_tensor(&dx1).max_norm() == 0.0);
}

#[test]
fn flavors_do_not_mix() {
    let a = CliffordForm::function(Flavor::Tangent, Multivector::one());
    let b = CliffordForm::function(Flavor::Cotangent, Multivector::one());
    assert_eq!(
        a.try_wedge_tensor(&b).unwrap_err(),
        FormError::FlavorMismatch(Flavor::Tangent, Flavor::Cotangent)
    );
    let s = CliffordForm::function(Flavor::Scalar, Multivector::one());
    assert_eq!(a.try_wedge_tensor(&s).unwrap().flavor(), Flavor::Tangent);
}

#[test]
fn degree_overflow_gives_zero() {
    let mut r = rng(1);
    let a = CliffordForm::random(&mut r, 3, Flavor::Tangent, &GRADES);
    let b = CliffordForm::random(&mut r, 2, Flavor::Tangent, &GRADES);
    assert_eq!(a.wedge_tensor(&b).max_norm(), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), p in 0usize..3) {
        let a = CliffordForm::random(&mut rng(seed), p, Flavor::Tangent, &GRADES);
        prop_assert!(a.exterior_d().exterior_d().max_norm() < 1e-10);
    }

    #[test]
    fn commutator_identities(seed in any::<u64>(), p in 0usize..3, q in 0usize..3, r in 0usize..2) {
        let mut g = rng(seed);
        let a = CliffordForm::random(&mut g, p, Flavor::Tangent, &GRADES);
        let b = CliffordForm::random(&mut g, q, Flavor::Tangent, &GRADES);
        let c = CliffordForm::random(&mut g, r, Flavor::Tangent, &GRADES);
        prop_assert!(graded_antisymmetry_residual(&a, &b) < 1e-10);
        prop_assert!(graded_jacobi_residual(&a, &b, &c) < 1e-9);
        prop_assert!(d_commutator_residual(&a, &b) < 1e-9);
    }

    #[test]
    fn bracket_with_one_form_is_a_derivation(seed in any::<u64>(), p in 0usize..2, q in 0usize..3) {
        let mut g = rng(seed);
        let om = CliffordForm::random(&mut g, 1, Flavor::Tangent, &[2]);
        let a = CliffordForm::random(&mut g, p, Flavor::Tangent, &GRADES);
        let b = CliffordForm::random(&mut g, q, Flavor::Tangent, &GRADES);
        prop_assert!(derivation_residual(&om, &a, &b) < 1e-9);
        prop_assert!(leibniz_residual(&a, &b, &om) < 1e-9);
    }
}

#[test]
fn weighted_derivation_only_holds_for_functions() {
    let geo = schwarzschild();
    let om = connection_form(&geo, Flavor::Tangent);
    let mut r = rng(7);
    let f = CliffordForm::random(&mut r, 0, Flavor::Tangent, &GRADES);
    let g = CliffordForm::random(&mut r, 0, Flavor::Tangent, &GRADES);
    assert!(weighted_derivation_residual(&om, &f, &g) < 1e-12);
    let a = CliffordForm::random(&mut r, 1, Flavor::Tangent, &GRADES);
    let b = CliffordForm::random(&mut r, 2, Flavor::Tangent, &GRADES);
    assert!(weighted_derivation_residual(&om, &a, &b) > 1e-2);
    assert!(derivation_residual(&om, &a, &b) < 1e-10);
}

#[test]
fn cartan_structure_on_schwarzschild() {
    let geo = schwarzschild();
    let om = connection_form(&geo, Flavor::Tangent);
    assert!(torsion(&geo, &om).max_norm() < 1e-10);
    assert!(bianchi_form_residual(&geo) < 1e-8);
    let r = curvature_form(&om);
    let rb = curvature_bivectors(&r);
    for mu in 0..4 {
        for nu in 0..4 {
            assert!((rb[mu][nu] - geo.curvature(mu, nu)).norm() < 1e-10);
        }
    }
    let two = cartan_two_forms(&geo);
    assert!((&bivectors_from_cartan(&two) - &r).max_norm() < 1e-10);
}

#[test]
fn covariant_d_squared_is_curvature_bracket() {
    let geo = schwarzschild();
    let om = connection_form(&geo, Flavor::Tangent);
    let mut r = rng(3);
    for p in 0..3 {
        let a = CliffordForm::random(&mut r, p, Flavor::Tangent, &GRADES);
        assert!(dsquared_residual(&a, &om) < 1e-9, "degree {p}");
    }
    let a = CliffordForm::random(&mut r, 1, Flavor::Tangent, &GRADES);
    let (lhs, rhs) = dcubed_residuals(&a, &om);
    assert!(lhs < 1e-8 && rhs < 1e-8);
}

#[test]
fn holonomy_of_coordinate_vectors() {
    let geo = schwarzschild();
    for v in coordinate_vector_fields(&geo) {
        assert!(holonomy_residual(&v, &geo) < 1e-9);
    }
}

#[test]
fn weighted_operator_relates_to_cartan_differential() {
    let geo = schwarzschild();
    let om = connection_form(&geo, Flavor::Tangent);
    let b = CliffordForm::random(&mut rng(5), 2, Flavor::Tangent, &[1]);
    assert!(cartan_relation_residual(&b, &om) < 1e-9);
    assert!(cartan_relation_residual(&soldering_form(&geo, Flavor::Tangent), &om) < 1e-9);
}

#[test]
fn form_hodge_round_trip() {
    let geo = schwarzschild();
    let mut r = rng(9);
    for p in 0..5 {
        let a = CliffordForm::random(&mut r, p, Flavor::Tangent, &GRADES);
        let back = form_hodge_inv(&form_hodge(&a, &geo), &geo);
        assert!((&back - &a).max_norm() / a.max_norm() < 1e-10, "degree {p}");
    }
}

#[test]
fn riemann_from_forms_matches_closed_form_component() {
    let (m, r): (f64, f64) = (1.0, 4.5);
    let geo = schwarzschild();
    let riem = riemann_coordinate(&geo);
    // |R_trtr| = 2m/r³ and |R_θφθφ| = 2m r sin²ϑ
    let got = riem[0][1][0][1];
    assert!(
        (got.abs() - 2.0 * m / r.powi(3)).abs() < 1e-12,
        "R_trtr = {got}"
    );
    let th: f64 = 1.2;
    let ang = riem[2][3][2][3];
    assert!(
        (ang.abs() - 2.0 * m * r * th.sin().powi(2)).abs() < 1e-10,
        "R_θφθφ = {ang}"
    );
    assert!(riemann_symmetry_residual(&riem) < 1e-10);
}
