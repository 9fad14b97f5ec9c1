use cliffgr::chart::{Geometry, LocalLorentz, Spacetime, Tetrad, Transformed};
use cliffgr::einstein::*;
use cliffgr::spinor_connection::*;
use cliffgr::Multivector;

const SCHW: Spacetime = Spacetime::Schwarzschild { m: 1.0 };
const EDS: Spacetime = Spacetime::EinsteinDeSitter;

fn suite(t: &dyn Tetrad, x: [f64; 4], sign: SachsSign) -> (Geometry, SachsSuite) {
    let geo = Geometry::at(t, x).unwrap();
    let ein = ricci_and_einstein(&geo);
    let tm = EnergyMomentum::from_tetrad(t, x).unwrap();
    let s = sachs_suite(&geo, &ein, &tm, sign);
    (geo, s)
}

fn cases() -> Vec<(Box<dyn Tetrad>, [f64; 4])> {
    vec![
        (Box::new(SCHW), [0.0, 4.0, 1.0, 0.3]),
        (
            Box::new(Transformed::new(SCHW, LocalLorentz::rotation(1, 2, 0.7))),
            [0.0, 5.0, 0.8, 1.3],
        ),
        (
            Box::new(Spacetime::PainleveGullstrand { m: 1.0 }),
            [0.0, 6.0, 1.4, 0.0],
        ),
        (Box::new(EDS), [1.2, 0.3, -0.1, 0.4]),
        (
            Box::new(Spacetime::MinkowskiSpherical),
            [0.0, 2.0, 1.0, 0.5],
        ),
    ]
}

#[test]
fn paravectors_contract_to_minus_four() {
    for (t, x) in cases() {
        let geo = Geometry::at(t.as_ref(), x).unwrap();
        let q = ParavectorField::new(&geo);
        assert!(q.paravector_residual() < 1e-14);
        assert!((q.trace_contraction() - Multivector::scalar(-4.0)).norm() < 1e-12);
        for rho in 0..4 {
            let om = geo.omega[rho].values();
            assert!(q.sandwich(&om).norm() < 1e-12);
        }
        let dec = q_tensor_decomposition(&geo);
        assert!(dec.metric_residual() < 1e-12);
        // the antisymmetric part never vanishes for a tetrad
        assert!(dec.antisymmetric_norm() > 0.1);
    }
}

#[test]
fn total_covariant_derivative_of_paravectors_vanishes() {
    for (t, x) in cases() {
        let geo = Geometry::at(t.as_ref(), x).unwrap();
        assert!(
            sachs_residual(&geo, SachsVariant::Dagger) < 1e-10,
            "{}",
            t.name()
        );
    }
    let geo = Geometry::at(&SCHW, [0.0, 4.0, 1.0, 0.3]).unwrap();
    assert!(sachs_residual(&geo, SachsVariant::Literal) > 1e-2);
}

#[test]
fn connection_recovered_from_paravectors() {
    for (t, x) in cases() {
        let geo = Geometry::at(t.as_ref(), x).unwrap();
        let q = ParavectorField::new(&geo);
        for rho in 0..4 {
            let om = geo.omega[rho].values();
            assert!((q.omega_from_q(&geo, rho) + dagger(&om)).norm() < 1e-10);
        }
    }
}

#[test]
fn paravector_field_equation() {
    for (t, x) in cases() {
        let (geo, s) = suite(t.as_ref(), x, SachsSign::Corrected);
        assert!(s.sachs1_residual() < 1e-9, "{}", t.name());
        assert!(s.sachs5_residual(&geo) < 1e-7, "{}", t.name());
    }
    // the opposite scalar-curvature sign only agrees where R = 0
    let (_, printed) = suite(&EDS, [1.2, 0.3, -0.1, 0.4], SachsSign::Printed);
    assert!(printed.sachs1_residual() > 1e-2);
    let (_, vac) = suite(&SCHW, [0.0, 4.0, 1.0, 0.3], SachsSign::Printed);
    assert!(vac.sachs1_residual() < 1e-9);
}

#[test]
fn field_vanishes_pointwise_in_vacuum() {
    for (t, x) in cases()
        .into_iter()
        .filter(|(t, _)| !t.name().contains("de_sitter"))
    {
        let (_, s) = suite(t.as_ref(), x, SachsSign::Corrected);
        let worst = s
            .field
            .iter()
            .flatten()
            .map(|m| m.values().norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "{}: {worst}", t.name());
    }
}

#[test]
fn dust_field_carries_bivectors_in_time_space_components() {
    let (_, s) = suite(&EDS, [1.0, 0.2, 0.3, -0.1], SachsSign::Corrected);
    let report = s.type_report();
    let get = |r: usize, g: usize| report.iter().find(|f| f.rho == r && f.gamma == g).copied();
    for i in 1..4 {
        let f = get(0, i).expect("component reported");
        assert!(f.bivector > 1e-3, "F_0{i} = {f:?}");
        assert!(f.odd < 1e-12);
    }
    if let Some(f) = get(1, 2) {
        assert!(f.bivector < 1e-12);
    }
}

#[test]
fn inertial_conditions_on_dust() {
    let x = [1.5, 0.1, 0.1, 0.1];
    let geo = Geometry::at(&EDS, x).unwrap();
    let rep = inertial_constraint_check(&geo, 1e-9);
    let rho = 4.0 / (3.0 * x[0] * x[0]);
    assert!((rep.ric_00 - 0.5 * rho).abs() < 1e-10);
    assert!(rep.geodesic_frame());
    assert!(rep.fermi_transported());
    // comoving observers expand, so e_0 is not covariantly constant
    assert!(!rep.inertial());
    assert!(!rep.teleparallel());
}

#[test]
fn inertial_conditions_on_static_schwarzschild() {
    let geo = Geometry::at(&SCHW, [0.0, 4.0, 1.0, 0.3]).unwrap();
    let rep = inertial_constraint_check(&geo, 1e-9);
    assert!(rep.ricci_compatible());
    assert!(!rep.geodesic_frame());
    assert!(rep.de0 > 1e-2);
    let infall = Transformed::new(SCHW, LocalLorentz::Infall { m: 1.0 });
    let rep =
        inertial_constraint_check(&Geometry::at(&infall, [0.0, 4.0, 1.0, 0.3]).unwrap(), 1e-9);
    assert!(
        rep.geodesic_frame(),
        "free fall is geodesic: {}",
        rep.geodesic
    );
}

#[test]
fn flat_frames() {
    let geo = Geometry::at(&Spacetime::MinkowskiCartesian, [0.0, 1.0, 2.0, 3.0]).unwrap();
    let rep = inertial_constraint_check(&geo, 1e-9);
    assert!(rep.teleparallel() && rep.inertial() && rep.curvature == 0.0);
    assert!(pauli_constraint_residual(&geo) < 1e-15);
    let geo = Geometry::at(&Spacetime::MinkowskiSpherical, [0.0, 2.0, 1.0, 0.5]).unwrap();
    let rep = inertial_constraint_check(&geo, 1e-9);
    assert!(rep.inertial());
    assert!(!rep.teleparallel());
    assert!(rep.curvature < 1e-12);
}
