//! Mass from the surface flux at large radius, and the frame dependence of
//! the gravitational pseudo-energy.

use cliffgr::chart::{LocalLorentz, Spacetime, Transformed};
use cliffgr::einstein::*;

fn main() {
    for (label, s) in [
        ("isotropic", Spacetime::SchwarzschildIsotropic { m: 1.0 }),
        (
            "deformed",
            Spacetime::SchwarzschildDeformed { m: 1.0, alpha: 1.0 },
        ),
        ("flat", Spacetime::MinkowskiCartesian),
    ] {
        let opts = MassOptions {
            superpotential: label == "isotropic",
            ..MassOptions::default()
        };
        let est = mass_integral(&s, &opts).unwrap();
        println!("{label}: m = {:.6}", est.extrapolated);
        for (r, f) in est.radii.iter().zip(&est.flux) {
            println!("    R = {r:>7.1}  flux {f:.6}");
        }
        if let Some(sp) = est.superpotential_extrapolated {
            println!(
                "    superpotential flux {sp:.5} (−8πm = {:.5})",
                -8.0 * std::f64::consts::PI
            );
        }
    }

    let schw = Spacetime::Schwarzschild { m: 1.0 };
    let x = [0.0, 4.0, 1.0, 0.3];
    let lorentz = LocalLorentz::Infall { m: 1.0 };
    let gc = gauge_comparison(
        &schw,
        &Transformed::new(schw, lorentz),
        lorentz.matrix(x),
        x,
    )
    .unwrap();
    println!("static vs infalling frame at r = 4m:");
    println!("    Einstein 3-forms mismatch {:.1e}", gc.einstein_mismatch);
    println!(
        "    pseudo-energy relative change {:.3}",
        gc.pseudo_energy_relative
    );
}
