//! Clifford-valued forms: the connection 1-form, its curvature and the
//! exterior covariant derivative.

use cliffgr::chart::{Geometry, Spacetime};
use cliffgr::forms::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let geo = Geometry::at(&Spacetime::Schwarzschild { m: 1.0 }, [0.0, 5.0, 1.0, 0.3]).unwrap();
    let om = connection_form(&geo, Flavor::Tangent);
    let r = curvature_form(&om);
    println!(
        "torsion of the soldering form: {:.1e}",
        torsion(&geo, &om).max_norm()
    );
    println!("largest curvature 2-form coefficient: {:.4e}", r.max_norm());

    let riem = riemann_coordinate(&geo);
    println!(
        "R_trtr = {:.6e}, 2m/r³ = {:.6e}",
        riem[0][1][0][1],
        2.0 / 125.0
    );

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let grades = [0, 1, 2, 3, 4];
    let a = CliffordForm::random(&mut rng, 1, Flavor::Tangent, &grades);
    let b = CliffordForm::random(&mut rng, 2, Flavor::Tangent, &grades);
    println!(
        "graded Jacobi      {:.1e}",
        graded_jacobi_residual(&a, &b, &a)
    );
    println!("Leibniz rule       {:.1e}", leibniz_residual(&a, &b, &om));
    println!("D²A − ½[R, A]      {:.1e}", dsquared_residual(&a, &om));
    println!(
        "derivation         {:.1e}",
        derivation_residual(&om, &a, &b)
    );
    println!(
        "weighted variant   {:.1e}",
        weighted_derivation_residual(&om, &a, &b)
    );
}
