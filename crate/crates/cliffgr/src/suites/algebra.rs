//! Identities of the spacetime algebra, fuzzed on random multivectors.

use super::{max_of, Context};
use crate::config::Suite;
use crate::multivector::{sigma, Multivector, ETA};
use crate::report::Check;
use rand::Rng;

const TOL: f64 = 1e-10;

fn random(rng: &mut impl Rng) -> Multivector {
    Multivector {
        c: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)),
    }
}

fn sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn rel(d: Multivector, scale: f64) -> f64 {
    d.norm() / scale.max(f64::MIN_POSITIVE)
}

/// The four Hodge duality identities for homogeneous `a` (grade r), `b` (grade s).
pub(crate) fn hodge_identities(a: &Multivector, r: usize, b: &Multivector, s: usize) -> f64 {
    let scale = a.norm() * b.norm();
    let mut w: f64 = 0.0;
    if r == s {
        w = w.max(rel(a.wedge(&b.hodge()) - b.wedge(&a.hodge()), scale));
    }
    if r + s == 4 {
        w = w.max(rel(
            a.left_contract(&b.hodge()) - b.left_contract(&a.hodge()),
            scale,
        ));
    }
    if r <= s {
        let rhs = a
            .reverse()
            .left_contract(b)
            .hodge()
            .scale(sign(r * (s + 3)));
        w = w.max(rel(a.wedge(&b.hodge()) - rhs, scale));
    }
    if r + s <= 4 {
        let rhs = a.reverse().wedge(b).hodge().scale(sign(r * s));
        w = w.max(rel(a.left_contract(&b.hodge()) - rhs, scale));
    }
    w
}

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng(Suite::Algebra);
    let n = ctx.config.samples;
    let i = Multivector::pseudoscalar();

    let mut clifford: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let (ea, eb) = (Multivector::basis(a), Multivector::basis(b));
            let eta = if a == b { ETA[a] } else { 0.0 };
            clifford = clifford.max((ea * eb + eb * ea - Multivector::scalar(2.0 * eta)).norm());
        }
    }
    let mut pauli_anti: f64 = 0.0;
    let mut pauli_prod: f64 = 0.0;
    for j in 1..=3 {
        for k in 1..=3 {
            let d = if j == k { 1.0 } else { 0.0 };
            pauli_anti = pauli_anti.max(
                (sigma(j) * sigma(k) + sigma(k) * sigma(j) - Multivector::scalar(2.0 * d)).norm(),
            );
            let mut rhs = Multivector::scalar(d);
            for l in 1..=3 {
                let e = levi_civita(j, k, l);
                if e != 0.0 {
                    rhs += (i * sigma(l)).scale(e);
                }
            }
            pauli_prod = pauli_prod.max((sigma(j) * sigma(k) - rhs).norm());
        }
    }

    let mut assoc = Vec::with_capacity(n);
    let mut split = Vec::with_capacity(n);
    let mut spectrum = Vec::with_capacity(n);
    let mut hodge_def = Vec::with_capacity(n);
    let mut hodge_inv = Vec::with_capacity(n);
    let mut hodge_ids = Vec::with_capacity(n);
    let mut hodge_inner = Vec::with_capacity(n);
    let mut reverse = Vec::with_capacity(n);
    let mut even = Vec::with_capacity(n);
    for _ in 0..n {
        let (a, b, c) = (random(&mut rng), random(&mut rng), random(&mut rng));
        let abc = a.norm() * b.norm() * c.norm();
        assoc.push(rel((a * b) * c - a * (b * c), abc));
        reverse.push(rel(
            (a * b).reverse() - b.reverse() * a.reverse(),
            a.norm() * b.norm(),
        ));
        even.push(rel((a.even() * b.even()).odd(), a.norm() * b.norm()));

        let v = a.grade(1);
        let mut w: f64 = 0.0;
        for s in 0..=4 {
            let bs = b.grade(s);
            let sc = v.norm() * bs.norm();
            let vb = v * bs;
            let bv = bs * v;
            w = w.max(rel(vb - (v.left_contract(&bs) + v.wedge(&bs)), sc));
            w = w.max(rel(
                v.left_contract(&bs) - (vb - bv.scale(sign(s))).scale(0.5),
                sc,
            ));
            w = w.max(rel(v.wedge(&bs) - (vb + bv.scale(sign(s))).scale(0.5), sc));
        }
        split.push(w);

        let mut spectrum_gap: f64 = 0.0;
        let mut ids: f64 = 0.0;
        let mut inner: f64 = 0.0;
        for r in 0..=4 {
            let ar = a.grade(r);
            for s in 0..=4 {
                let bs = b.grade(s);
                let p = ar * bs;
                let lo = r.abs_diff(s);
                let mut allowed = Multivector::zero();
                for k in 0..=((r + s - lo) / 2) {
                    allowed += p.grade(lo + 2 * k);
                }
                spectrum_gap = spectrum_gap.max(rel(p - allowed, ar.norm() * bs.norm()));
                ids = ids.max(hodge_identities(&ar, r, &bs, s));
                if r == s {
                    let lhs = ar.wedge(&bs.hodge());
                    inner = inner.max(rel(
                        lhs - i.scale(ar.scalar_product(&bs)),
                        ar.norm() * bs.norm(),
                    ));
                }
            }
            hodge_def.push(rel(ar.hodge() - ar.reverse() * i, ar.norm()));
            let via_star = ar.hodge().hodge().scale(sign(r * (4 - r) + 1));
            hodge_inv.push(
                rel(ar.hodge().hodge_inv() - ar, ar.norm()).max(rel(via_star - ar, ar.norm())),
            );
        }
        spectrum.push(spectrum_gap);
        hodge_ids.push(ids);
        hodge_inner.push(inner);
    }

    vec![
        Check::below(
            "algebra.clifford_relation",
            "θ^aθ^b + θ^bθ^a = 2η^{ab} on all basis pairs",
            clifford,
            1e-15,
        ),
        Check::below(
            "algebra.pauli_anticommutator",
            "σ^jσ^k + σ^kσ^j = 2δ^{jk}",
            pauli_anti,
            1e-15,
        ),
        Check::below(
            "algebra.pauli_product",
            "σ^jσ^k = δ^{jk} + i ε_{jkl} σ^l with i = θ^5",
            pauli_prod,
            1e-15,
        ),
        Check::below(
            "algebra.associativity",
            "(AB)C = A(BC), relative",
            max_of(assoc),
            TOL,
        ),
        Check::below(
            "algebra.reverse_antiautomorphism",
            "(AB)~ = B̃Ã, relative",
            max_of(reverse),
            TOL,
        ),
        Check::below(
            "algebra.even_closure",
            "even times even has no odd part",
            max_of(even),
            TOL,
        ),
        Check::below(
            "algebra.vector_split",
            "aB = a⌟B + a∧B and the symmetric/antisymmetric halves",
            max_of(split),
            TOL,
        ),
        Check::below(
            "algebra.grade_spectrum",
            "A_rB_s only has grades |r−s|+2k",
            max_of(spectrum),
            TOL,
        ),
        Check::below(
            "algebra.hodge_definition",
            "⋆A = Ãθ^5",
            max_of(hodge_def),
            TOL,
        ),
        Check::below(
            "algebra.hodge_inverse",
            "⋆⁻¹⋆ = 1 and ⋆⁻¹ = (−1)^{p(4−p)+1}⋆",
            max_of(hodge_inv),
            TOL,
        ),
        Check::below(
            "algebra.hodge_identities",
            "four wedge/contraction duality identities",
            max_of(hodge_ids),
            TOL,
        ),
        Check::below(
            "algebra.hodge_inner_product",
            "A∧⋆B = (A·B)θ^5 for equal grades",
            max_of(hodge_inner),
            TOL,
        ),
    ]
}

fn levi_civita(j: usize, k: usize, l: usize) -> f64 {
    match (j, k, l) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (2, 1, 3) | (1, 3, 2) => -1.0,
        _ => 0.0,
    }
}
