use cliffgr::multivector::{grade_of, sigma, ETA};
use cliffgr::Multivector;
use proptest::prelude::*;

fn mv() -> impl Strategy<Value = Multivector> {
    prop::array::uniform16(-1.0f64..1.0).prop_map(|c| Multivector { c })
}

fn homogeneous(k: usize) -> impl Strategy<Value = Multivector> {
    mv().prop_map(move |m| m.grade(k))
}

/// Product of two basis blades by sorting the concatenated index list.
fn blade_product(i: usize, j: usize) -> (f64, usize) {
    let mut idx: Vec<usize> = (0..4).filter(|b| i >> b & 1 == 1).collect();
    idx.extend((0..4).filter(|b| j >> b & 1 == 1));
    let mut sign = 1.0;
    // bubble sort, one sign flip per transposition
    for pass in 0..idx.len() {
        for k in 0..idx.len().saturating_sub(1 + pass) {
            if idx[k] > idx[k + 1] {
                idx.swap(k, k + 1);
                sign = -sign;
            }
        }
    }
    let mut out = Vec::new();
    let mut k = 0;
    while k < idx.len() {
        if k + 1 < idx.len() && idx[k] == idx[k + 1] {
            sign *= ETA[idx[k]];
            k += 2;
        } else {
            out.push(idx[k]);
            k += 1;
        }
    }
    (sign, out.iter().fold(0, |m, b| m | 1 << b))
}

#[test]
fn cayley_table_matches_sorting_oracle() {
    for i in 0..16 {
        for j in 0..16 {
            let (s, k) = blade_product(i, j);
            let mut expect = Multivector::zero();
            expect.c[k] = s;
            assert_eq!(
                Multivector::blade(i) * Multivector::blade(j),
                expect,
                "blades {i} {j}"
            );
        }
    }
}

#[test]
fn pseudoscalar_squares_to_minus_one_and_anticommutes_with_vectors() {
    let i = Multivector::pseudoscalar();
    assert_eq!(i * i, Multivector::scalar(-1.0));
    for a in 0..4 {
        let e = Multivector::basis(a);
        assert_eq!(i * e, -(e * i));
    }
}

#[test]
fn relative_vectors_form_pauli_algebra() {
    for k in 1..4 {
        assert_eq!(sigma(k) * sigma(k), Multivector::one());
    }
    let i = Multivector::pseudoscalar();
    assert_eq!(sigma(1) * sigma(2) * sigma(3), i);
}

#[test]
fn grade_of_counts_bits() {
    let counts: Vec<usize> = (0..5)
        .map(|g| (0..16).filter(|&m| grade_of(m) == g).count())
        .collect();
    assert_eq!(counts, vec![1, 4, 6, 4, 1]);
}

proptest! {
    #[test]
    fn product_is_associative(a in mv(), b in mv(), c in mv()) {
        let d = (a * b) * c - a * (b * c);
        prop_assert!(d.norm() < 1e-12);
    }

    #[test]
    fn product_distributes(a in mv(), b in mv(), c in mv()) {
        prop_assert!((a * (b + c) - (a * b + a * c)).norm() < 1e-12);
        prop_assert!(((a + b) * c - (a * c + b * c)).norm() < 1e-12);
    }

    #[test]
    fn reverse_is_antiautomorphism(a in mv(), b in mv()) {
        prop_assert!(((a * b).reverse() - b.reverse() * a.reverse()).norm() < 1e-12);
    }

    #[test]
    fn involute_is_automorphism(a in mv(), b in mv()) {
        prop_assert!(((a * b).involute() - a.involute() * b.involute()).norm() < 1e-12);
    }

    #[test]
    fn grades_reassemble(a in mv()) {
        let sum = (0..5).fold(Multivector::zero(), |s, k| s + a.grade(k));
        prop_assert_eq!(sum, a);
        for k in 0..5 {
            prop_assert_eq!(a.grade(k).grade(k), a.grade(k));
        }
    }

    #[test]
    fn vector_products_split(u in homogeneous(1), v in homogeneous(1)) {
        let lhs = u * v;
        let rhs = u.left_contract(&v) + u.wedge(&v);
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn vector_squares_to_quadratic_form(v in homogeneous(1)) {
        let q: f64 = (0..4).map(|a| ETA[a] * v.c[1 << a] * v.c[1 << a]).sum();
        prop_assert!((v * v - Multivector::scalar(q)).norm() < 1e-12);
    }

    #[test]
    fn vector_contraction_is_graded_derivation(u in homogeneous(1), b in mv()) {
        // u⌟B = ½(uB − B̂u)
        let rhs = (u * b - b.involute() * u).scale(0.5);
        prop_assert!((u.left_contract(&b) - rhs).norm() < 1e-12);
    }

    #[test]
    fn wedge_is_associative(a in mv(), b in mv(), c in mv()) {
        prop_assert!((a.wedge(&b).wedge(&c) - a.wedge(&b.wedge(&c))).norm() < 1e-12);
    }

    #[test]
    fn hodge_round_trip(a in mv()) {
        prop_assert!((a.hodge().hodge_inv() - a).norm() < 1e-12);
        prop_assert!((a.hodge() - a.reverse() * Multivector::pseudoscalar()).norm() < 1e-12);
    }

    #[test]
    fn double_hodge_sign(k in 0usize..5, a in mv()) {
        // ⋆⋆ = −(−1)^{k(4−k)} in Lorentzian signature
        let ak = a.grade(k);
        let s = if (k * (4 - k)).is_multiple_of(2) { -1.0 } else { 1.0 };
        prop_assert!((ak.hodge().hodge() - ak.scale(s)).norm() < 1e-12);
    }

    #[test]
    fn commutator_with_bivector_preserves_grade(k in 0usize..5, a in mv(), b in homogeneous(2)) {
        let ak = a.grade(k);
        let c = b.commutator(&ak);
        prop_assert!((c - c.grade(k)).norm() < 1e-12);
    }
}
