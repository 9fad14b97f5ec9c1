//! Dense spacetime-algebra kernel, Cl(1,3) with η = diag(1,−1,−1,−1).
//!
//! Components are indexed by a 4-bit blade mask: bit `b` set means basis
//! vector `b` is a factor, factors in ascending order. Index 0 is the scalar,
//! index 15 the pseudoscalar `θ^5 = θ^0θ^1θ^2θ^3`.

use crate::jet::Scalar;
use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};
use std::sync::OnceLock;

/// Diagonal of the spacetime metric.
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];
/// Mask of the pseudoscalar.
pub const PSEUDO: usize = 15;

/// Fixed metric signature of the kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Signature {
    pub eta: [f64; 4],
}

impl Signature {
    pub const SPACETIME: Signature = Signature { eta: ETA };
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum AlgebraError {
    #[error("grade {0} out of range 0..=4")]
    GradeOutOfRange(usize),
}

pub fn grade_of(mask: usize) -> usize {
    (mask as u32).count_ones() as usize
}

struct Table {
    /// sign of blade(i)·blade(j); result mask is i ^ j.
    sign: [[f64; 16]; 16],
    /// Hodge: ⋆blade(i) = hodge_sign[i] · blade(15 ^ i).
    hodge_sign: [f64; 16],
}

fn table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    T.get_or_init(|| {
        let mut sign = [[0.0; 16]; 16];
        for (i, row) in sign.iter_mut().enumerate() {
            for (j, s) in row.iter_mut().enumerate() {
                *s = blade_sign(i, j);
            }
        }
        let mut hodge_sign = [0.0; 16];
        for (i, h) in hodge_sign.iter_mut().enumerate() {
            let g = grade_of(i);
            let rev = if (g * g.saturating_sub(1) / 2).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            *h = rev * sign[i][PSEUDO];
        }
        Table { sign, hodge_sign }
    })
}

fn blade_sign(i: usize, j: usize) -> f64 {
    let mut swaps = 0u32;
    for b in 0..4 {
        if j & (1 << b) != 0 {
            swaps += ((i >> (b + 1)) as u32).count_ones();
        }
    }
    let mut s = if swaps.is_multiple_of(2) { 1.0 } else { -1.0 };
    for (b, e) in ETA.iter().enumerate() {
        if i & j & (1 << b) != 0 {
            s *= e;
        }
    }
    s
}

/// Sign of the product of two basis blades (result mask `i ^ j`).
pub fn product_sign(i: usize, j: usize) -> f64 {
    table().sign[i][j]
}

/// Π η_bb over the bits of `mask`: the factor relating a blade to its index-lowered twin.
pub fn metric_factor(mask: usize) -> f64 {
    (0..4)
        .filter(|b| mask & (1 << b) != 0)
        .map(|b| ETA[b])
        .product()
}

fn reverse_sign(mask: usize) -> f64 {
    let g = grade_of(mask);
    if (g * g.saturating_sub(1) / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Element of the spacetime algebra with coefficients in `S`.
#[derive(Clone, Copy, PartialEq)]
pub struct Multivector<S: Scalar = f64> {
    pub c: [S; 16],
}

impl<S: Scalar> Default for Multivector<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Multivector<S> {
    pub fn zero() -> Self {
        Multivector { c: [S::zero(); 16] }
    }

    pub fn scalar(s: S) -> Self {
        let mut m = Self::zero();
        m.c[0] = s;
        m
    }

    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    /// Unit basis blade with the given mask.
    pub fn blade(mask: usize) -> Self {
        let mut m = Self::zero();
        m.c[mask] = S::one();
        m
    }

    /// Basis vector `θ^a` (or `e_a` in the tangent flavor).
    pub fn basis(a: usize) -> Self {
        Self::blade(1 << a)
    }

    /// Pseudoscalar `θ^5`.
    pub fn pseudoscalar() -> Self {
        Self::blade(PSEUDO)
    }

    /// Vector `v^a θ_a`-style combination of basis vectors.
    pub fn vector(v: [S; 4]) -> Self {
        let mut m = Self::zero();
        for (a, x) in v.into_iter().enumerate() {
            m.c[1 << a] = x;
        }
        m
    }

    /// Bivector with antisymmetric components `b[a][c]` summed as `½ b^{ac} θ_a θ_c`.
    pub fn bivector_from_antisym(b: &[[S; 4]; 4]) -> Self {
        let mut m = Self::zero();
        for a in 0..4 {
            for c in a + 1..4 {
                m.c[(1 << a) | (1 << c)] = b[a][c];
            }
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize) -> S) -> Self {
        Multivector {
            c: std::array::from_fn(f),
        }
    }

    pub fn map(&self, f: impl Fn(S) -> S) -> Self {
        Multivector { c: self.c.map(f) }
    }

    /// Point values (drops derivative information carried by jets).
    pub fn values(&self) -> Multivector<f64> {
        Multivector {
            c: self.c.map(|s| s.value()),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|x| x.scale(s))
    }

    pub fn scale_by(&self, s: S) -> Self {
        self.map(|x| x * s)
    }

    /// Largest component magnitude.
    pub fn norm(&self) -> f64 {
        self.c.iter().fold(0.0, |m, x| m.max(x.magnitude()))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn grade(&self, k: usize) -> Self {
        Self::from_fn(|i| {
            if grade_of(i) == k {
                self.c[i]
            } else {
                S::zero()
            }
        })
    }

    /// Grade projection with a range check.
    pub fn grade_project(&self, k: usize) -> Result<Self, AlgebraError> {
        if k > 4 {
            return Err(AlgebraError::GradeOutOfRange(k));
        }
        Ok(self.grade(k))
    }

    pub fn scalar_part(&self) -> S {
        self.c[0]
    }

    pub fn even(&self) -> Self {
        Self::from_fn(|i| {
            if grade_of(i).is_multiple_of(2) {
                self.c[i]
            } else {
                S::zero()
            }
        })
    }

    pub fn odd(&self) -> Self {
        Self::from_fn(|i| {
            if grade_of(i) % 2 == 1 {
                self.c[i]
            } else {
                S::zero()
            }
        })
    }

    /// Grades carrying a component of magnitude above `tol`.
    pub fn grades_present(&self, tol: f64) -> Vec<usize> {
        (0..=4)
            .filter(|&k| (0..16).any(|i| grade_of(i) == k && self.c[i].magnitude() > tol))
            .collect()
    }

    pub fn reverse(&self) -> Self {
        Self::from_fn(|i| self.c[i].scale(reverse_sign(i)))
    }

    /// Grade involution `A ↦ Â`.
    pub fn involute(&self) -> Self {
        Self::from_fn(|i| {
            if grade_of(i) % 2 == 1 {
                -self.c[i]
            } else {
                self.c[i]
            }
        })
    }

    /// Clifford conjugate (reverse of the involution).
    pub fn conjugate(&self) -> Self {
        self.involute().reverse()
    }

    fn blade_filtered(&self, b: &Self, keep: impl Fn(usize, usize) -> bool) -> Self {
        let t = table();
        let mut out = Self::zero();
        for i in 0..16 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..16 {
                if b.c[j].is_zero() || !keep(i, j) {
                    continue;
                }
                let s = t.sign[i][j];
                let p = self.c[i] * b.c[j];
                if s > 0.0 {
                    out.c[i ^ j] += p;
                } else {
                    out.c[i ^ j] -= p;
                }
            }
        }
        out
    }

    pub fn gp(&self, b: &Self) -> Self {
        self.blade_filtered(b, |_, _| true)
    }

    /// Exterior product `Σ ⟨A_r B_s⟩_{r+s}`.
    pub fn wedge(&self, b: &Self) -> Self {
        self.blade_filtered(b, |i, j| i & j == 0)
    }

    /// Left contraction `Σ ⟨A_r B_s⟩_{s−r}`, zero for r > s.
    pub fn left_contract(&self, b: &Self) -> Self {
        self.blade_filtered(b, |i, j| i & j == i)
    }

    /// Right contraction `Σ ⟨A_r B_s⟩_{r−s}`, zero for s > r.
    pub fn right_contract(&self, b: &Self) -> Self {
        self.blade_filtered(b, |i, j| i & j == j)
    }

    /// Gram-determinant scalar product `⟨Ã B⟩_0`.
    pub fn scalar_product(&self, b: &Self) -> S {
        let t = table();
        let mut s = S::zero();
        for i in 0..16 {
            if self.c[i].is_zero() || b.c[i].is_zero() {
                continue;
            }
            let f = reverse_sign(i) * t.sign[i][i];
            s += (self.c[i] * b.c[i]).scale(f);
        }
        s
    }

    pub fn commutator(&self, b: &Self) -> Self {
        self.gp(b) - b.gp(self)
    }

    pub fn anticommutator(&self, b: &Self) -> Self {
        self.gp(b) + b.gp(self)
    }

    /// Hodge dual `⋆A = Ã θ^5`.
    pub fn hodge(&self) -> Self {
        let t = table();
        Self::from_fn(|k| self.c[PSEUDO ^ k].scale(t.hodge_sign[PSEUDO ^ k]))
    }

    /// Inverse of [`Multivector::hodge`].
    pub fn hodge_inv(&self) -> Self {
        let t = table();
        // ⋆ maps blade i to ±blade(15^i) with a sign of modulus one
        Self::from_fn(|i| self.c[PSEUDO ^ i].scale(t.hodge_sign[i]))
    }

    /// Index-lowering map between the tangent and cotangent fibers.
    pub fn flat(&self) -> Self {
        Self::from_fn(|i| self.c[i].scale(metric_factor(i)))
    }

    pub fn approx_eq(&self, b: &Self, rel: f64) -> bool {
        let scale = self.norm().max(b.norm());
        (*self - *b).norm() <= (1e-12f64).max(rel * scale)
    }
}

impl Multivector<f64> {
    /// Bivector components `b^{ac}` (antisymmetric) of the grade-2 part.
    pub fn bivector_components(&self) -> [[f64; 4]; 4] {
        let mut b = [[0.0; 4]; 4];
        for a in 0..4 {
            for c in a + 1..4 {
                b[a][c] = self.c[(1 << a) | (1 << c)];
                b[c][a] = -b[a][c];
            }
        }
        b
    }

    pub fn vector_components(&self) -> [f64; 4] {
        [self.c[1], self.c[2], self.c[4], self.c[8]]
    }

    /// Promote constant coefficients into another scalar field.
    pub fn lift<T: Scalar>(&self) -> Multivector<T> {
        Multivector {
            c: self.c.map(T::from_f64),
        }
    }
}

impl<S: Scalar> Index<usize> for Multivector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.c[i]
    }
}

impl<S: Scalar> IndexMut<usize> for Multivector<S> {
    fn index_mut(&mut self, i: usize) -> &mut S {
        &mut self.c[i]
    }
}

impl<S: Scalar> Add for Multivector<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<S: Scalar> AddAssign for Multivector<S> {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl<S: Scalar> Sub for Multivector<S> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<S: Scalar> SubAssign for Multivector<S> {
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl<S: Scalar> Neg for Multivector<S> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|x| -x)
    }
}

impl<S: Scalar> Mul for Multivector<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.gp(&rhs)
    }
}

impl<S: Scalar> Mul<f64> for Multivector<S> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<Multivector<f64>> for f64 {
    type Output = Multivector<f64>;
    fn mul(self, rhs: Multivector<f64>) -> Multivector<f64> {
        rhs.scale(self)
    }
}

const BLADE_NAMES: [&str; 16] = [
    "1", "θ0", "θ1", "θ01", "θ2", "θ02", "θ12", "θ012", "θ3", "θ03", "θ13", "θ013", "θ23", "θ023",
    "θ123", "θ5",
];

pub fn blade_name(mask: usize) -> &'static str {
    BLADE_NAMES[mask]
}

impl<S: Scalar> fmt::Debug for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, x) in self.c.iter().enumerate() {
            if x.value() != 0.0 {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "{}·{}", x.value(), BLADE_NAMES[i])?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Display for Multivector<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Pauli-type bivector `σ^i = θ^i θ^0`.
pub fn sigma(i: usize) -> Multivector {
    Multivector::basis(i) * Multivector::basis(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Multivector;

    #[test]
    fn basis_squares() {
        for a in 0..4 {
            let e = M::basis(a);
            assert_eq!(e * e, M::scalar(ETA[a]));
        }
        assert_eq!(M::pseudoscalar() * M::pseudoscalar(), M::scalar(-1.0));
    }

    #[test]
    fn contraction_examples() {
        let t1 = M::basis(1);
        let t12 = M::basis(1).wedge(&M::basis(2));
        assert_eq!(t1.left_contract(&t12), -M::basis(2));
        assert!(t12.left_contract(&t1).is_zero());
        let t01 = M::basis(0).wedge(&M::basis(1));
        assert_eq!(t01.scalar_product(&t01), -1.0);
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(M::one().hodge(), M::pseudoscalar());
        assert_eq!(M::pseudoscalar().hodge(), M::scalar(-1.0));
        for i in 0..16 {
            let b = M::blade(i);
            assert_eq!(b.hodge().hodge_inv(), b);
            assert_eq!(b.hodge_inv().hodge(), b);
            assert_eq!(b.hodge(), b.reverse() * M::pseudoscalar());
        }
    }

    #[test]
    fn grade_out_of_range() {
        assert_eq!(
            M::one().grade_project(5),
            Err(AlgebraError::GradeOutOfRange(5))
        );
    }

    #[test]
    fn sigma_product() {
        let i = M::pseudoscalar();
        assert_eq!(sigma(1) * sigma(2), i * sigma(3));
        assert_eq!(sigma(1).commutator(&sigma(2)), (i * sigma(3)).scale(2.0));
    }
}
