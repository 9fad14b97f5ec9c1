//! Pauli algebra, its matrix image, algebraic spinors and the spinor
//! connection at sample points.

use super::{max_of, Context};
use crate::config::Suite;
use crate::multivector::Multivector;
use crate::report::Check;
use crate::spinor::*;
use crate::spinor_connection::{gamma_identity_residual, sigma_check_residual, spinor_omega};
use num_complex::Complex64 as C;
use rand::Rng;

fn random_pauli(rng: &mut impl Rng) -> PauliNumber {
    PauliNumber::new(Multivector {
        c: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)),
    })
}

fn random_c(rng: &mut impl Rng) -> C {
    C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn hamilton(p: [f64; 4], q: [f64; 4]) -> [f64; 4] {
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    ]
}

fn gap(a: &PauliNumber, b: &PauliNumber) -> f64 {
    (*a.mv() - *b.mv()).norm()
}

/// Pauli basis rebuilt from ideal and dotted spinor bases through `ι`.
pub(crate) fn iota_reconstruction_residual() -> f64 {
    let s = |a| ideal_basis(a);
    let sd = |a| dotted_basis(a);
    let io = |a: usize, b: usize| *iota(&s(a), &sd(b)).mv();
    let i = Multivector::pseudoscalar();
    let built = [
        io(1, 1) + io(2, 2),
        -(io(1, 2) + io(2, 1)),
        i * (io(1, 2) - io(2, 1)),
        -(io(1, 1) - io(2, 2)),
    ];
    (0..4)
        .map(|k| (built[k] - *PauliNumber::sigma_lower(k).mv()).norm())
        .fold(0.0, f64::max)
}

/// `s^A ⊠ s^B` are the matrix units and the idempotent is `s^1 ⊠ s^1`.
pub(crate) fn kronecker_residual() -> f64 {
    let mut w: f64 = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            let mut c = [[C::new(0.0, 0.0); 2]; 2];
            c[a][b] = C::new(1.0, 0.0);
            w = w.max(
                from_lower_components(&c)
                    .sub(&PauliMatrix2::unit(a, b))
                    .max_abs(),
            );
        }
    }
    let e = idempotent().to_matrix();
    let mut c11 = [[C::new(0.0, 0.0); 2]; 2];
    c11[0][0] = C::new(1.0, 0.0);
    w.max(e.sub(&from_lower_components(&c11)).max_abs())
}

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng(Suite::Spinor);
    let n = ctx.config.samples;

    let mut hom = Vec::with_capacity(n);
    let mut roundtrip = Vec::with_capacity(n);
    let mut quat = Vec::with_capacity(n);
    let mut raise = Vec::with_capacity(n);
    let mut dotted = Vec::with_capacity(n);
    for _ in 0..n {
        let (p, q) = (random_pauli(&mut rng), random_pauli(&mut rng));
        let scale = p.mv().norm() * q.mv().norm();
        hom.push(
            (p * q)
                .to_matrix()
                .sub(&(p.to_matrix() * q.to_matrix()))
                .max_abs()
                / scale,
        );
        roundtrip.push(gap(&PauliNumber::from_matrix(&p.to_matrix()), &p) / p.mv().norm());

        let a: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let b: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        quat.push(gap(
            &(quaternion_embed(a) * quaternion_embed(b)),
            &quaternion_embed(hamilton(a, b)),
        ));

        let xi = [random_c(&mut rng), random_c(&mut rng)];
        let back = raise_index(lower_index(xi));
        raise.push((back[0] - xi[0]).norm().max((back[1] - xi[1]).norm()));
        let d = DottedSpinor::from_undotted(xi).to_undotted();
        dotted.push((d[0] - xi[0]).norm().max((d[1] - xi[1]).norm()));
    }

    let mut sigma_img: f64 = (PauliNumber::one()
        .to_matrix()
        .sub(&PauliMatrix2::identity()))
    .max_abs();
    for k in 1..=3 {
        sigma_img = sigma_img.max(
            PauliNumber::sigma(k)
                .to_matrix()
                .sub(&PauliMatrix2::pauli(k))
                .max_abs(),
        );
    }
    let e = idempotent();
    let one_minus_e = PauliNumber::new(Multivector::one() - *e.mv());
    let idem = gap(&(e * e), &e).max((e * one_minus_e).mv().norm());
    let eps = PauliMatrix2::epsilon()
        .sub(&PauliMatrix2::pauli(2).scale(C::new(0.0, 1.0)))
        .max_abs();
    let escape = {
        let (p1, _) = PauliNumber::sigma(1).split();
        (p1 - Multivector::scalar(p1.c[0])).norm()
    };

    let mut checks = vec![
        Check::below(
            "spinor.matrix_homomorphism",
            "matrix of PQ equals product of matrices, relative",
            max_of(hom),
            1e-12,
        ),
        Check::below(
            "spinor.matrix_roundtrip",
            "from_matrix after to_matrix is the identity",
            max_of(roundtrip),
            1e-12,
        ),
        Check::below(
            "spinor.sigma_images",
            "1 and σ^k map to the identity and Pauli matrices",
            sigma_img,
            1e-15,
        ),
        Check::below(
            "spinor.idempotent",
            "e² = e and e(1 − e) = 0 for e = ½(1 + σ^3)",
            idem,
            1e-15,
        ),
        Check::below(
            "spinor.iota_basis",
            "ι rebuilds σ_0..σ_3 from spinor bases",
            iota_reconstruction_residual(),
            1e-15,
        ),
        Check::below(
            "spinor.kronecker_units",
            "s^A ⊠ s^B are the matrix units, e = s^1 ⊠ s^1",
            kronecker_residual(),
            1e-15,
        ),
        Check::below("spinor.epsilon", "ε = iσ_2", eps, 1e-15),
        Check::below(
            "spinor.raise_lower",
            "raising after lowering is the identity",
            max_of(raise),
            1e-15,
        ),
        Check::below(
            "spinor.dotted_roundtrip",
            "ξ ↦ ξ̄ε ↦ ξ round trip",
            max_of(dotted),
            1e-15,
        ),
        Check::below(
            "spinor.quaternion_product",
            "quaternion embedding is multiplicative",
            max_of(quat),
            1e-14,
        ),
        Check::above(
            "spinor.paravector_escape",
            "σ^1 lies outside the quaternion image",
            escape,
            0.5,
        ),
        Check::below(
            "spinor.sigma_check",
            "σ_aσ̌_b + σ_bσ̌_a = −2η_ab",
            sigma_check_residual(),
            1e-15,
        ),
    ];

    let pts = ctx.points(&mut rng);
    match ctx.geometries(&pts) {
        Ok(geos) => {
            let eps_conj = max_of(geos.iter().flat_map(|g| {
                (0..4).map(move |a| spinor_omega(g, a).epsilon_conjugation_residual())
            }));
            let eps_t = max_of(geos.iter().flat_map(|g| {
                (0..4).map(move |a| spinor_omega(g, a).epsilon_transpose_residual())
            }));
            let gamma = max_of(geos.iter().map(gamma_identity_residual));
            checks.push(Check::info(
                "spinor.connection_epsilon_conjugation",
                "largest |Ω − εΩ†ε|; vanishes only for pure boosts",
                eps_conj,
            ));
            checks.push(Check::below(
                "spinor.connection_epsilon_transpose",
                "Ω = εΩᵀε for every connection matrix",
                eps_t,
                1e-10,
            ));
            checks.push(Check::below(
                "spinor.gamma_identity",
                "connection bivectors reproduce the frame connection on vectors",
                gamma,
                1e-10,
            ));
        }
        Err(e) => checks.push(Check::failed(
            "spinor.connection",
            "spinor connection at sample points",
            e,
        )),
    }
    checks
}
