//! Christoffel symbols and the Kretschmann scalar of Schwarzschild,
//! analytic jets against finite differences.

use cliffgr::chart::{Geometry, Spacetime};
use cliffgr::config::{MetricSpec, Provider};

fn main() {
    let s = Spacetime::Schwarzschild { m: 1.0 };
    println!(
        "{:>6} {:>14} {:>14} {:>10}",
        "r", "K (jets)", "48/r⁶", "rel"
    );
    for r in [3.0, 4.0, 6.0, 10.0, 25.0] {
        let g = Geometry::at(&s, [0.0, r, 1.1, 0.4]).unwrap();
        let k = g.kretschmann();
        let exact = 48.0 / f64::powi(r, 6);
        println!(
            "{r:>6} {k:>14.6e} {exact:>14.6e} {:>10.1e}",
            (k - exact).abs() / exact
        );
    }

    let g = Geometry::at(&s, [0.0, 4.0, 1.1, 0.4]).unwrap();
    let gam = g.christoffels();
    println!(
        "Γ^t_tr = {:.6} (m/(r²f) = {:.6})",
        gam[0][0][1],
        1.0 / (16.0 * 0.5)
    );
    println!("Γ^r_θθ = {:.6}", gam[1][2][2]);

    let mut metric = MetricSpec::named("schwarzschild");
    metric.provider = Provider::Fd;
    let fd = metric.tetrad().unwrap();
    let gf = Geometry::at(fd.as_ref(), [0.0, 4.0, 1.1, 0.4]).unwrap();
    println!("finite differences: K = {:.6e}", gf.kretschmann());
    println!(
        "torsion residual {:.1e}, Bianchi residual {:.1e}",
        g.torsion_residual(),
        g.bianchi_residual()
    );
}
