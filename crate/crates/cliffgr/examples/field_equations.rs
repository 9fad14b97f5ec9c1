//! Einstein tensor by three routes, in vacuum and for dust.

use cliffgr::chart::{Geometry, Spacetime, Tetrad};
use cliffgr::einstein::*;

fn worst(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .fold(0.0, |w, (x, y)| w.max((x - y).abs()))
}

fn report(t: &dyn Tetrad, x: [f64; 4]) {
    let geo = Geometry::at(t, x).unwrap();
    let ein = ricci_and_einstein(&geo);
    let tm = EnergyMomentum::from_tetrad(t, x).unwrap();
    let s = sachs_suite(&geo, &ein, &tm, SachsSign::Corrected);
    println!("{} at {x:?}", t.name());
    println!(
        "  G_00 from curvature bivectors {:.6}",
        ein.einstein_tensor()[0][0]
    );
    println!(
        "  G_00 from 3-forms             {:.6}",
        einstein_from_three_forms(&geo)[0][0]
    );
    println!(
        "  G_00 from paravectors         {:.6}",
        s.einstein_from_paravectors(&geo)[0][0]
    );
    println!("  T_00                          {:.6}", tm.values()[0][0]);
    println!(
        "  max |G − T|                   {:.1e}",
        worst(&ein.einstein_tensor(), &tm.values())
    );
    let ml = maxwell_like(&ein, &tm);
    println!("  Maxwell-like field norm       {:.4e}", ml.field_norm());
}

fn main() {
    report(&Spacetime::Schwarzschild { m: 1.0 }, [0.0, 4.0, 1.0, 0.3]);
    report(&Spacetime::EinsteinDeSitter, [1.5, 0.2, 0.1, 0.3]);
}
