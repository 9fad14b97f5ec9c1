//! Basis products, grades and the Hodge dual in Cl(1,3).

use cliffgr::Multivector;

fn main() {
    let e: [Multivector; 4] = std::array::from_fn(Multivector::basis);
    for (a, ea) in e.iter().enumerate() {
        println!("θ^{a}θ^{a} = {}", ea.gp(ea));
    }
    let i = Multivector::pseudoscalar();
    println!("I² = {}", i.gp(&i));

    let v = Multivector::vector([1.0, 0.5, -2.0, 0.25]);
    let b = e[1].wedge(&e[2]) * 3.0 + e[0].wedge(&e[3]);
    let vb = v.gp(&b);
    println!("v = {v}");
    println!("B = {b}");
    for k in [1, 3] {
        println!("<vB>_{k} = {}", vb.grade_project(k).unwrap());
    }
    println!("v⌟B = {}", v.left_contract(&b));
    println!("v∧B = {}", v.wedge(&b));
    println!("⋆B = {}", b.hodge());
    println!("B~ = {}", b.reverse());
}
