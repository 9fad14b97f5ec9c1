//! Dirac operator on multiforms, the tetrad wave equation and Maxwell's
//! equations from a potential.

use cliffgr::chart::{Geometry, Spacetime};
use cliffgr::dirac::*;
use cliffgr::einstein::EnergyMomentum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let s = Spacetime::Schwarzschild { m: 1.0 };
    let x = [0.0, 4.0, 1.0, 0.3];
    let geo = Geometry::at(&s, x).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);

    let a = random_multiform(&mut rng, &[0, 1, 2, 3, 4]);
    let r = operator_residuals(&a, &geo);
    println!("∂ = d − δ        {:.1e}", r.split);
    println!("dd, δδ           {:.1e}, {:.1e}", r.dd, r.deltadelta);
    println!("∂² splitting     {:.1e}", r.square_split);

    let tm = EnergyMomentum::from_tetrad(&s, x).unwrap();
    let w = tetrad_wave(&geo, &tm, RicciSign::Standard);
    println!("tetrad wave      {:.1e}", w.residual);
    println!("|(□ + T)θ^a|     {:.4}", w.box_plus_trace);

    let pot = random_multiform(&mut rng, &[1]);
    let f = differential(&pot, &geo);
    let j = dirac(&f, &geo);
    let m = maxwell(&f, &j, &geo);
    println!("dF = 0           {:.1e}", m.df);
    println!("δF = −J          {:.1e}", m.delta_f);
    println!("d⋆F = −⋆J        {:.1e}", m.dual);
}
