#![allow(clippy::needless_range_loop)]

use cliffgr::chart::{Geometry, Spacetime};
use cliffgr::dirac::random_multiform;
use cliffgr::spinor::*;
use cliffgr::spinor_connection::fermi::{integrate_converged, TransportState};
use cliffgr::spinor_connection::*;
use cliffgr::{Jet, Multivector};
use num_complex::Complex64 as C;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pauli() -> impl Strategy<Value = PauliNumber> {
    prop::array::uniform16(-1.0f64..1.0).prop_map(|c| PauliNumber::new(Multivector { c }))
}

fn complex() -> impl Strategy<Value = C> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| C::new(a, b))
}

fn schwarzschild_at(r: f64) -> Geometry {
    Geometry::at(&Spacetime::Schwarzschild { m: 1.0 }, [0.0, r, 1.0, 0.3]).unwrap()
}

proptest! {
    #[test]
    fn matrix_image_is_multiplicative(p in pauli(), q in pauli()) {
        let lhs = (p * q).to_matrix();
        let rhs = p.to_matrix() * q.to_matrix();
        prop_assert!(lhs.sub(&rhs).max_abs() < 1e-12);
    }

    #[test]
    fn matrix_round_trip(p in pauli()) {
        let back = PauliNumber::from_matrix(&p.to_matrix());
        prop_assert!((*back.mv() - *p.mv()).norm() < 1e-12);
    }

    #[test]
    fn dagger_is_hermitian_conjugate(p in pauli()) {
        let lhs = p.dagger().to_matrix();
        prop_assert!(lhs.sub(&p.to_matrix().dagger()).max_abs() < 1e-12);
    }

    #[test]
    fn raise_undoes_lower(a in complex(), b in complex()) {
        prop_assert_eq!(raise_index(lower_index([a, b])), [a, b]);
    }

    #[test]
    fn dotted_round_trip(a in complex(), b in complex()) {
        let back = DottedSpinor::from_undotted([a, b]).to_undotted();
        prop_assert!((back[0] - a).norm() < 1e-15 && (back[1] - b).norm() < 1e-15);
    }

    #[test]
    fn ideal_projection_is_idempotent(p in pauli()) {
        let s = IdealSpinor::project(p);
        let again = IdealSpinor::project(s.value());
        prop_assert!((*again.value().mv() - *s.value().mv()).norm() < 1e-12);
    }

    #[test]
    fn quaternion_units_close_under_product(a in prop::array::uniform4(-1.0f64..1.0), b in prop::array::uniform4(-1.0f64..1.0)) {
        let p = quaternion_embed(a) * quaternion_embed(b);
        prop_assert!(is_quaternion(&p, 1e-12));
    }
}

#[test]
fn pauli_matrices_have_textbook_entries() {
    let i = C::new(0.0, 1.0);
    let (o, z) = (C::new(1.0, 0.0), C::new(0.0, 0.0));
    assert_eq!(PauliMatrix2::pauli(1).m, [[z, o], [o, z]]);
    assert_eq!(PauliMatrix2::pauli(2).m, [[z, -i], [i, z]]);
    assert_eq!(PauliMatrix2::pauli(3).m, [[o, z], [z, -o]]);
    assert_eq!(PauliMatrix2::epsilon().m, [[z, o], [-o, z]]);
}

#[test]
fn quaternion_units_square_to_minus_one() {
    for k in 1..4 {
        let mut q = [0.0; 4];
        q[k] = 1.0;
        let u = quaternion_embed(q);
        assert!((*(u * u).mv() + Multivector::one()).norm() < 1e-15);
    }
}

#[test]
fn sigma_one_is_not_a_quaternion() {
    assert!(!is_quaternion(&PauliNumber::sigma(1), 1e-12));
}

#[test]
fn spinor_derivative_obeys_leibniz() {
    let geo = schwarzschild_at(4.0);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let e = idempotent().mv().lift::<Jet>();
    for a in 0..4 {
        let mut v = [0.0; 4];
        v[a] = 1.0;
        let t = random_multiform(&mut rng, &[0, 2, 4]);
        let xi = random_multiform(&mut rng, &[0, 1, 2, 3, 4]) * e;
        assert!(
            spinor_leibniz_residual(&t, &xi, &v, &geo) < 1e-12,
            "direction {a}"
        );
    }
}

#[test]
fn non_ideal_element_is_rejected() {
    let geo = schwarzschild_at(4.0);
    let odd = Multivector::<Jet>::basis(1);
    let v = [1.0, 0.0, 0.0, 0.0];
    assert!(spinor_covariant_derivative(&odd, &v, SpinorFlavor::Pauli, &geo).is_err());
    assert!(spinor_covariant_derivative(
        &Multivector::<Jet>::one(),
        &v,
        SpinorFlavor::Undotted,
        &geo
    )
    .is_err());
}

#[test]
fn conjugated_dotted_rule_is_consistent() {
    let geo = schwarzschild_at(5.0);
    let xi = [C::new(0.3, -0.2), C::new(1.1, 0.4)];
    let dxi = [C::new(-0.7, 0.5), C::new(0.2, 0.9)];
    let mut literal_gap: f64 = 0.0;
    for a in 0..4 {
        let om = spinor_omega(&geo, a).matrix;
        assert!(dotted_consistency_residual(xi, dxi, &om, DottedRule::Conjugated) < 1e-14);
        literal_gap = literal_gap.max(dotted_consistency_residual(
            xi,
            dxi,
            &om,
            DottedRule::Literal,
        ));
    }
    // the rotation parts of the connection break the literal rule
    assert!(literal_gap > 1e-3);
}

#[test]
fn connection_matrices_satisfy_transpose_rule() {
    for r in [3.0, 4.0, 10.0] {
        let geo = schwarzschild_at(r);
        for a in 0..4 {
            let s = spinor_omega(&geo, a);
            assert!(s.epsilon_transpose_residual() < 1e-12);
            assert!(s.matrix.trace().norm() < 1e-12);
        }
        assert!(gamma_identity_residual(&geo) < 1e-12);
    }
}

#[test]
fn sigma_check_contraction() {
    assert!(sigma_check_residual() < 1e-15);
}

#[test]
fn transported_frame_stays_orthonormal() {
    let m = 1.0;
    let r0: f64 = 10.0;
    let f = 1.0 - 2.0 * m / r0;
    // radial infall from rest: u^t = 1/√f, spatial legs from the static tetrad
    let start = TransportState {
        x: [0.0, r0, 1.0, 0.3],
        frame: [
            [1.0 / f.sqrt(), 0.0, 0.0, 0.0],
            [0.0, f.sqrt(), 0.0, 0.0],
            [0.0, 0.0, 1.0 / r0, 0.0],
            [0.0, 0.0, 0.0, 1.0 / (r0 * 1f64.sin())],
        ],
    };
    let (end, diff) = integrate_converged(m, start, 2.0, 200);
    assert!(diff < 1e-8);
    assert!(end.x[1] < r0);
    let g = schwarzschild_at_point(end.x).metric();
    let eta = [1.0, -1.0, -1.0, -1.0];
    for a in 0..4 {
        for b in 0..4 {
            let mut s = 0.0;
            for mu in 0..4 {
                for nu in 0..4 {
                    s += g[mu][nu] * end.frame[a][mu] * end.frame[b][nu];
                }
            }
            let want = if a == b { eta[a] } else { 0.0 };
            assert!((s - want).abs() < 1e-9, "g(e_{a}, e_{b}) = {s}");
        }
    }
}

fn schwarzschild_at_point(x: [f64; 4]) -> Geometry {
    Geometry::at(&Spacetime::Schwarzschild { m: 1.0 }, x).unwrap()
}
