//! Even subalgebra as 2×2 complex matrices, with Weyl spinors living in a
//! minimal left ideal.

use cliffgr::spinor::*;
use num_complex::Complex64 as C;

fn show(name: &str, m: &PauliMatrix2) {
    let f = |z: C| format!("{:+.3}{:+.3}i", z.re, z.im);
    println!(
        "{name} = [[{}, {}], [{}, {}]]",
        f(m.m[0][0]),
        f(m.m[0][1]),
        f(m.m[1][0]),
        f(m.m[1][1])
    );
}

fn main() {
    for k in 1..4 {
        show(&format!("σ_{k}"), &PauliNumber::sigma(k).to_matrix());
    }
    let s1 = PauliNumber::sigma(1);
    let s2 = PauliNumber::sigma(2);
    show("σ_1σ_2", &(s1 * s2).to_matrix());
    show("i", &PauliNumber::i().to_matrix());

    let phi = IdealSpinor::from_components([C::new(0.6, 0.0), C::new(0.0, 0.8)]);
    println!("ideal spinor column {:?}", phi.column());
    println!("lowered with ε {:?}", phi.lowered());
    let back = raise_index(phi.lowered());
    println!("raised again {:?}", back);

    let dot = DottedSpinor::from_undotted([C::new(1.0, 0.0), C::new(0.0, -1.0)]);
    let p = iota(&phi.value(), &dot.algebraic());
    show("ι(φ, ξ̄)", &p.to_matrix());

    let q = quaternion_embed([1.0, 2.0, -1.0, 0.5]);
    println!(
        "embedded quaternion stays in the quaternion subalgebra: {}",
        is_quaternion(&(q * q), 1e-12)
    );
}
