//! Paravector fields q_μ, their field strength and the inertial-frame
//! conditions on e_0.

use cliffgr::chart::{Geometry, LocalLorentz, Spacetime, Tetrad, Transformed};
use cliffgr::einstein::*;
use cliffgr::spinor_connection::*;

fn main() {
    let schw = Spacetime::Schwarzschild { m: 1.0 };
    let frames: Vec<(Box<dyn Tetrad>, [f64; 4])> = vec![
        (Box::new(schw), [0.0, 4.0, 1.0, 0.3]),
        (
            Box::new(Transformed::new(schw, LocalLorentz::Infall { m: 1.0 })),
            [0.0, 4.0, 1.0, 0.3],
        ),
        (Box::new(Spacetime::EinsteinDeSitter), [1.5, 0.1, 0.1, 0.1]),
        (
            Box::new(Spacetime::MinkowskiCartesian),
            [0.0, 1.0, 2.0, 3.0],
        ),
    ];
    for (t, x) in frames {
        let geo = Geometry::at(t.as_ref(), x).unwrap();
        let ein = ricci_and_einstein(&geo);
        let tm = EnergyMomentum::from_tetrad(t.as_ref(), x).unwrap();
        let q = ParavectorField::new(&geo);
        let s = sachs_suite(&geo, &ein, &tm, SachsSign::Corrected);
        let c = inertial_constraint_check(&geo, 1e-9);
        println!("{}", t.name());
        println!("  q^μ q̌_μ = {}", q.trace_contraction());
        println!(
            "  total derivative of q_μ {:.1e}",
            sachs_residual(&geo, SachsVariant::Dagger)
        );
        println!("  field equation residual {:.1e}", s.sachs1_residual());
        let strongest = s
            .type_report()
            .iter()
            .map(|f| f.bivector)
            .fold(0.0, f64::max);
        println!("  largest bivector part of the field {strongest:.3e}");
        println!(
            "  |De_0| {:.3e}  geodesic {:.1e}  Fermi {:.1e}  Ric(e_0,e_0) {:.4}  teleparallel {}",
            c.de0,
            c.geodesic,
            c.fermi,
            c.ric_00,
            c.teleparallel()
        );
    }
}
