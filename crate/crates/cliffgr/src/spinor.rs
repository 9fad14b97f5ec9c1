//! Pauli even subalgebra, its 2×2 complex image, and algebraic spinors.
//!
//! The formal imaginary unit of the algebra is the pseudoscalar `θ^5`; in
//! the matrix image it becomes the literal `i`. Pauli vectors are
//! `σ^k = θ^k θ^0`, mapped to the standard Pauli matrices.
//!
//! Algebraic spinors live in the minimal left ideal generated by
//! `e = ½(1 + σ^3)`, whose image is `diag(1, 0)`. The ideal basis is
//! `ϑ_1 = e`, `ϑ_2 = σ^1 e`; the dotted basis is `s^1̇ = e`, `s^2̇ = e σ^1`.

use crate::multivector::{grade_of, sigma, Multivector, PSEUDO};
use num_complex::Complex64 as C;
use std::ops::Mul;

const Z: C = C::new(0.0, 0.0);
const O: C = C::new(1.0, 0.0);
const I: C = C::new(0.0, 1.0);

/// 2×2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliMatrix2 {
    pub m: [[C; 2]; 2],
}

impl PauliMatrix2 {
    pub fn new(m: [[C; 2]; 2]) -> Self {
        PauliMatrix2 { m }
    }

    pub fn identity() -> Self {
        Self::new([[O, Z], [Z, O]])
    }

    pub fn zero() -> Self {
        Self::new([[Z, Z], [Z, Z]])
    }

    /// Standard Pauli matrix `σ^k`, k = 1..3 (k = 0 gives the identity).
    pub fn pauli(k: usize) -> Self {
        match k {
            0 => Self::identity(),
            1 => Self::new([[Z, O], [O, Z]]),
            2 => Self::new([[Z, -I], [I, Z]]),
            3 => Self::new([[O, Z], [Z, -O]]),
            _ => panic!("pauli index {k}"),
        }
    }

    /// `ε = adiag(1, −1)` as a matrix, equal to `iσ^2`.
    pub fn epsilon() -> Self {
        Self::new([[Z, O], [-O, Z]])
    }

    /// Unit matrix with a single one at `(r, c)`.
    pub fn unit(r: usize, c: usize) -> Self {
        let mut m = Self::zero();
        m.m[r][c] = O;
        m
    }

    pub fn scale(&self, s: C) -> Self {
        Self::new(self.m.map(|r| r.map(|x| x * s)))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = *self;
        for i in 0..2 {
            for j in 0..2 {
                r.m[i][j] += o.m[i][j];
            }
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-O))
    }

    pub fn dagger(&self) -> Self {
        let m = self.m;
        Self::new([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> C {
        self.m[0][0] + self.m[1][1]
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().fold(0.0, |a, x| a.max(x.norm()))
    }

    /// Kronecker product of a column and a row: `col ⊠ row`.
    pub fn kron(col: [C; 2], row: [C; 2]) -> Self {
        Self::new([
            [col[0] * row[0], col[0] * row[1]],
            [col[1] * row[0], col[1] * row[1]],
        ])
    }
}

impl Mul for PauliMatrix2 {
    type Output = PauliMatrix2;
    fn mul(self, o: PauliMatrix2) -> PauliMatrix2 {
        let mut r = PauliMatrix2::zero();
        for i in 0..2 {
            for j in 0..2 {
                r.m[i][j] = self.m[i][0] * o.m[0][j] + self.m[i][1] * o.m[1][j];
            }
        }
        r
    }
}

/// Complex number `a + ib` as the even element `a + b θ^5`.
pub fn complex_to_even(z: C) -> Multivector {
    let mut m = Multivector::scalar(z.re);
    m.c[PSEUDO] = z.im;
    m
}

/// Even element of the spacetime algebra (a Pauli number).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliNumber(Multivector);

impl PauliNumber {
    /// Projects onto the even part; odd components are discarded.
    pub fn new(m: Multivector) -> Self {
        PauliNumber(m.even())
    }

    /// Accepts only elements with no odd part above `tol`.
    pub fn try_new(m: Multivector, tol: f64) -> Option<Self> {
        (m.odd().norm() <= tol).then(|| PauliNumber(m.even()))
    }

    pub fn one() -> Self {
        PauliNumber(Multivector::one())
    }

    /// `σ^k` for k = 1..3.
    pub fn sigma(k: usize) -> Self {
        PauliNumber(sigma(k))
    }

    /// Lower-index `σ_k = −σ^k`; `σ_0 = 1`.
    pub fn sigma_lower(k: usize) -> Self {
        if k == 0 {
            Self::one()
        } else {
            PauliNumber(-sigma(k))
        }
    }

    pub fn i() -> Self {
        PauliNumber(Multivector::pseudoscalar())
    }

    pub fn mv(&self) -> &Multivector {
        &self.0
    }

    /// `P = P₁ + i L₂`: returns (s + p^kσ_k, p + l^kσ_k) in the upper σ basis.
    pub fn split(&self) -> (Multivector, Multivector) {
        let i = Multivector::pseudoscalar();
        let mut p1 = Multivector::scalar(self.0.c[0]);
        let mut l2 = Multivector::scalar(self.0.c[PSEUDO]);
        for k in 1..=3 {
            let s = sigma(k);
            // σ^k ⋅ σ^k = 1, so the σ^k coefficient is ⟨σ^k P⟩₀
            p1 += s.scale((s * self.0).c[0]);
            l2 += s.scale((s * (-i) * self.0).c[0]);
        }
        (p1, l2)
    }

    pub fn to_matrix(&self) -> PauliMatrix2 {
        let mut out = PauliMatrix2::zero();
        for (mask, v) in self.0.c.iter().enumerate() {
            if *v != 0.0 && grade_of(mask).is_multiple_of(2) {
                out = out.add(&even_blade_image(mask).scale(C::new(*v, 0.0)));
            }
        }
        out
    }

    pub fn from_matrix(m: &PauliMatrix2) -> Self {
        let i = Multivector::pseudoscalar();
        let a0 = m.trace() * 0.5;
        let mut p = complex_to_even(a0);
        for k in 1..=3 {
            let ak = (*m * PauliMatrix2::pauli(k)).trace() * 0.5;
            p += sigma(k).scale(ak.re) + (i * sigma(k)).scale(ak.im);
        }
        PauliNumber(p)
    }

    /// Reversion on the even subalgebra, mapped to Hermitian conjugation:
    /// `P† = θ^0 P̃ θ^0`.
    pub fn dagger(&self) -> Self {
        let e0 = Multivector::basis(0);
        PauliNumber(e0 * self.0.reverse() * e0)
    }
}

impl Mul for PauliNumber {
    type Output = PauliNumber;
    fn mul(self, o: PauliNumber) -> PauliNumber {
        PauliNumber(self.0 * o.0)
    }
}

fn pair_image(a: usize, b: usize) -> PauliMatrix2 {
    // θ^0θ^k = −σ^k; θ^iθ^j = −σ^iσ^j
    if a == 0 {
        PauliMatrix2::pauli(b).scale(-O)
    } else {
        (PauliMatrix2::pauli(a) * PauliMatrix2::pauli(b)).scale(-O)
    }
}

fn even_blade_image(mask: usize) -> PauliMatrix2 {
    let bits: Vec<usize> = (0..4).filter(|b| mask & (1 << b) != 0).collect();
    let mut m = PauliMatrix2::identity();
    for pair in bits.chunks(2) {
        m = m * pair_image(pair[0], pair[1]);
    }
    m
}

/// Minimal idempotent `e = ½(1 + σ^3)`.
pub fn idempotent() -> PauliNumber {
    PauliNumber((Multivector::one() + sigma(3)).scale(0.5))
}

/// Ideal basis `s_1 = e`, `s_2 = σ^1 e`.
pub fn ideal_basis(a: usize) -> PauliNumber {
    match a {
        1 => idempotent(),
        2 => PauliNumber::sigma(1) * idempotent(),
        _ => panic!("spinor index {a}"),
    }
}

/// Dotted basis `s^1̇ = e`, `s^2̇ = e σ^1`.
pub fn dotted_basis(a: usize) -> PauliNumber {
    match a {
        1 => idempotent(),
        2 => idempotent() * PauliNumber::sigma(1),
        _ => panic!("spinor index {a}"),
    }
}

/// Element of the left ideal generated by `e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdealSpinor {
    value: PauliNumber,
}

impl IdealSpinor {
    /// `φ = φ^1 ϑ_1 + φ^2 ϑ_2`.
    pub fn from_components(phi: [C; 2]) -> Self {
        let v = complex_to_even(phi[0]) * *ideal_basis(1).mv()
            + complex_to_even(phi[1]) * *ideal_basis(2).mv();
        IdealSpinor {
            value: PauliNumber(v),
        }
    }

    /// Accepts `p` if right multiplication by `e` fixes it.
    pub fn try_from_pauli(p: PauliNumber, tol: f64) -> Option<Self> {
        let pe = p * idempotent();
        ((*pe.mv() - *p.mv()).norm() <= tol).then_some(IdealSpinor { value: p })
    }

    /// Projects any Pauli number into the ideal.
    pub fn project(p: PauliNumber) -> Self {
        IdealSpinor {
            value: p * idempotent(),
        }
    }

    pub fn value(&self) -> PauliNumber {
        self.value
    }

    /// Column representative `(φ^1, φ^2)`.
    pub fn column(&self) -> [C; 2] {
        let m = self.value.to_matrix();
        [m.m[0][0], m.m[1][0]]
    }

    /// Covariant components `φ_A = φ^B ε_{BA}`.
    pub fn lowered(&self) -> [C; 2] {
        lower_index(self.column())
    }
}

/// Row-vector dotted spinor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DottedSpinor {
    pub row: [C; 2],
}

impl DottedSpinor {
    /// `ξ̇ = ξ̄ ε` from a covariant undotted spinor `ξ`.
    pub fn from_undotted(xi: [C; 2]) -> Self {
        let e = PauliMatrix2::epsilon().m;
        let xb = [xi[0].conj(), xi[1].conj()];
        DottedSpinor {
            row: [
                xb[0] * e[0][0] + xb[1] * e[1][0],
                xb[0] * e[0][1] + xb[1] * e[1][1],
            ],
        }
    }

    /// Inverse of [`DottedSpinor::from_undotted`].
    pub fn to_undotted(&self) -> [C; 2] {
        // ξ̄ = ξ̇ ε⁻¹ with ε⁻¹ = −ε
        let e = PauliMatrix2::epsilon().m;
        let r = self.row;
        let xb = [
            -(r[0] * e[0][0] + r[1] * e[1][0]),
            -(r[0] * e[0][1] + r[1] * e[1][1]),
        ];
        [xb[0].conj(), xb[1].conj()]
    }

    /// Algebraic image `ξ_1̇ s^1̇ + ξ_2̇ s^2̇`.
    pub fn algebraic(&self) -> PauliNumber {
        PauliNumber(
            complex_to_even(self.row[0]) * *dotted_basis(1).mv()
                + complex_to_even(self.row[1]) * *dotted_basis(2).mv(),
        )
    }

    /// Contravariant components `ξ^Ḃ = ε^{ḂȦ} ξ_Ȧ`.
    pub fn raised(&self) -> [C; 2] {
        raise_index(self.row)
    }
}

/// Bilinear map `ι(φ ⊗ ξ̇) = φ ξ̇`.
pub fn iota(phi: &PauliNumber, xidot: &PauliNumber) -> PauliNumber {
    *phi * *xidot
}

fn eps(a: usize, b: usize) -> C {
    match (a, b) {
        (0, 1) => O,
        (1, 0) => -O,
        _ => Z,
    }
}

/// `φ_A = φ^B ε_{BA}`.
pub fn lower_index(up: [C; 2]) -> [C; 2] {
    [0, 1].map(|a| (0..2).map(|b| up[b] * eps(b, a)).sum())
}

/// `φ^B = ε^{BA} φ_A`.
pub fn raise_index(down: [C; 2]) -> [C; 2] {
    [0, 1].map(|b| (0..2).map(|a| eps(b, a) * down[a]).sum())
}

/// Mixed components `P^A_Ḃ` with `P = P^A_Ḃ s_A s^Ḃ` (column times row).
pub fn mixed_components(p: &PauliNumber) -> [[C; 2]; 2] {
    p.to_matrix().m
}

/// Reassembles a matrix from mixed components.
pub fn from_mixed_components(c: &[[C; 2]; 2]) -> PauliMatrix2 {
    let col = |a: usize| if a == 0 { [O, Z] } else { [Z, O] };
    let mut m = PauliMatrix2::zero();
    for a in 0..2 {
        for b in 0..2 {
            m = m.add(&PauliMatrix2::kron(col(a), col(b)).scale(c[a][b]));
        }
    }
    m
}

/// Two-lower-index components `P_AB` with `P = P_AB s^A ⊠ s^B`,
/// where `s^A ⊠ s^B` is the transposed row times a row.
pub fn lower_components(p: &PauliMatrix2) -> [[C; 2]; 2] {
    let row = |a: usize| if a == 0 { [O, Z] } else { [Z, O] };
    let mut out = [[Z; 2]; 2];
    for (a, r) in out.iter_mut().enumerate() {
        for (b, v) in r.iter_mut().enumerate() {
            let k = PauliMatrix2::kron(row(a), row(b));
            // basis matrices are orthonormal units
            *v = (k.dagger() * *p).trace();
        }
    }
    out
}

pub fn from_lower_components(c: &[[C; 2]; 2]) -> PauliMatrix2 {
    let row = |a: usize| if a == 0 { [O, Z] } else { [Z, O] };
    let mut m = PauliMatrix2::zero();
    for a in 0..2 {
        for b in 0..2 {
            m = m.add(&PauliMatrix2::kron(row(a), row(b)).scale(c[a][b]));
        }
    }
    m
}

/// Quaternion `w + x î + y ĵ + z k̂` embedded multiplicatively as
/// `{1, î, ĵ, k̂} ↦ {1, −iσ^1, −iσ^2, −iσ^3}`.
pub fn quaternion_embed(q: [f64; 4]) -> PauliNumber {
    let i = Multivector::pseudoscalar();
    let mut m = Multivector::scalar(q[0]);
    for k in 1..=3 {
        m -= (i * sigma(k)).scale(q[k]);
    }
    PauliNumber(m)
}

/// The four quaternion units as written in the literal table
/// `{1, −iσ_1, −iσ_2, −iσ_3}` (an anti-isomorphic assignment).
pub fn quaternion_units_literal() -> [PauliNumber; 4] {
    let i = Multivector::pseudoscalar();
    [
        PauliNumber::one(),
        PauliNumber(-(i * *PauliNumber::sigma_lower(1).mv())),
        PauliNumber(-(i * *PauliNumber::sigma_lower(2).mv())),
        PauliNumber(-(i * *PauliNumber::sigma_lower(3).mv())),
    ]
}

/// Whether `p` lies in the image of [`quaternion_embed`].
pub fn is_quaternion(p: &PauliNumber, tol: f64) -> bool {
    let (p1, _) = p.split();
    (p1 - Multivector::scalar(p1.c[0])).norm() <= tol && p.mv().c[PSEUDO].abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &PauliMatrix2, b: &PauliMatrix2) -> bool {
        a.sub(b).max_abs() < 1e-14
    }

    #[test]
    fn sigma_images() {
        for k in 1..=3 {
            assert!(close(
                &PauliNumber::sigma(k).to_matrix(),
                &PauliMatrix2::pauli(k)
            ));
        }
        assert!(close(
            &PauliNumber::i().to_matrix(),
            &PauliMatrix2::identity().scale(I)
        ));
        assert!(close(&idempotent().to_matrix(), &PauliMatrix2::unit(0, 0)));
    }

    #[test]
    fn ideal_column() {
        let s = IdealSpinor::from_components([C::new(1.0, 2.0), C::new(-0.5, 0.25)]);
        assert_eq!(s.column(), [C::new(1.0, 2.0), C::new(-0.5, 0.25)]);
        assert!(IdealSpinor::try_from_pauli(s.value(), 1e-14).is_some());
    }

    #[test]
    fn raise_lower_roundtrip() {
        let v = [C::new(1.0, 0.0), C::new(0.0, 0.0)];
        assert_eq!(lower_index(v), [Z, O]);
        let w = [C::new(0.3, -1.0), C::new(2.0, 0.5)];
        assert_eq!(raise_index(lower_index(w)), w);
    }
}
