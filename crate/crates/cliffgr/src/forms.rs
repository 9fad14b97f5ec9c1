//! Clifford-valued differential forms and their calculus.
//!
//! A [`CliffordForm`] of degree `p` stores one multivector coefficient per
//! strictly increasing index tuple `μ₁ < … < μ_p`, encoded as a 4-bit
//! coordinate mask. Coefficients are third-order jets around the base point,
//! so `d` is exact differentiation of the expansion.
//!
//! The exterior covariant differential acts through the adjoint action of the
//! connection bivectors, `D A = dA + ½[ω, A]`, for every degree. The
//! degree-weighted operator `dA + (p/2)[ω, A]` is kept separately as
//! [`weighted_exterior_covariant_d`].

use crate::chart::Geometry;
use crate::jet::Jet;
use crate::multivector::{grade_of, product_sign, Multivector, ETA};
use rand::Rng;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

/// Which fiber the multivector coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `Cl(TM)`, basis `e_a`.
    Tangent,
    /// `Cl(T*M)`, basis `θ^a`.
    Cotangent,
    /// Scalar coefficients, compatible with either fiber.
    Scalar,
}

impl Flavor {
    fn join(self, other: Flavor) -> Result<Flavor, FormError> {
        match (self, other) {
            (a, b) if a == b => Ok(a),
            (Flavor::Scalar, b) => Ok(b),
            (a, Flavor::Scalar) => Ok(a),
            (a, b) => Err(FormError::FlavorMismatch(a, b)),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum FormError {
    #[error("cannot combine {0:?}-valued and {1:?}-valued forms")]
    FlavorMismatch(Flavor, Flavor),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A Clifford-valued `p`-form `A = Σ_{I increasing} A_I dx^I`.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordForm {
    degree: usize,
    flavor: Flavor,
    c: Box<[Multivector<Jet>; 16]>,
}

/// Masks of the given popcount.
pub fn tuples(p: usize) -> impl Iterator<Item = usize> {
    (0..16usize).filter(move |m| grade_of(*m) == p)
}

/// Sign of `dx^I ∧ dx^J` relative to `dx^{I∪J}` for disjoint masks.
fn wedge_sign(i: usize, j: usize) -> f64 {
    product_sign(i, j)
}

impl CliffordForm {
    pub fn zero(degree: usize, flavor: Flavor) -> Self {
        CliffordForm {
            degree,
            flavor,
            c: Box::new([Multivector::zero(); 16]),
        }
    }

    /// Builds a form from a coefficient function on increasing tuples.
    pub fn from_fn(degree: usize, flavor: Flavor, f: impl Fn(usize) -> Multivector<Jet>) -> Self {
        let mut out = CliffordForm::zero(degree, flavor);
        for m in tuples(degree) {
            out.c[m] = f(m);
        }
        out
    }

    /// A 0-form.
    pub fn function(flavor: Flavor, a: Multivector<Jet>) -> Self {
        CliffordForm::from_fn(0, flavor, |_| a)
    }

    /// A 1-form `Σ_μ a_μ dx^μ`.
    pub fn one_form(flavor: Flavor, a: [Multivector<Jet>; 4]) -> Self {
        CliffordForm::from_fn(1, flavor, |m| a[m.trailing_zeros() as usize])
    }

    /// Scalar 1-form `Σ_μ f_μ dx^μ`.
    pub fn scalar_one_form(f: [Jet; 4]) -> Self {
        CliffordForm::one_form(Flavor::Scalar, f.map(Multivector::scalar))
    }

    /// 2-form from an antisymmetric array `F_μν` (so `A = ½ F_μν dx^μ∧dx^ν`).
    pub fn two_form(flavor: Flavor, f: &[[Multivector<Jet>; 4]; 4]) -> Self {
        CliffordForm::from_fn(2, flavor, |m| {
            let mu = m.trailing_zeros() as usize;
            let nu = (m ^ (1 << mu)).trailing_zeros() as usize;
            f[mu][nu]
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Coefficient on the increasing tuple `mask`.
    pub fn coeff(&self, mask: usize) -> &Multivector<Jet> {
        &self.c[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, v: Multivector<Jet>) {
        assert_eq!(
            grade_of(mask),
            self.degree,
            "tuple size must equal the degree"
        );
        self.c[mask] = v;
    }

    /// `A(∂_{μ₁}, …, ∂_{μ_p})` for arbitrary index order.
    pub fn component(&self, idx: &[usize]) -> Multivector {
        assert_eq!(idx.len(), self.degree);
        let mut mask = 0usize;
        let mut sign = 1.0;
        for (k, &i) in idx.iter().enumerate() {
            if mask & (1 << i) != 0 {
                return Multivector::zero();
            }
            // count later-placed indices smaller than i
            sign *= if idx[k + 1..]
                .iter()
                .filter(|&&j| j < i)
                .count()
                .is_multiple_of(2)
            {
                1.0
            } else {
                -1.0
            };
            mask |= 1 << i;
        }
        self.c[mask].values().scale(sign)
    }

    /// Value of the coefficients at the base point.
    pub fn values(&self) -> [Multivector; 16] {
        std::array::from_fn(|m| self.c[m].values())
    }

    /// Largest coefficient norm at the base point.
    pub fn max_norm(&self) -> f64 {
        tuples(self.degree)
            .map(|m| self.c[m].values().norm())
            .fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(&Multivector<Jet>) -> Multivector<Jet>) -> Self {
        CliffordForm::from_fn(self.degree, self.flavor, |m| f(&self.c[m]))
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|m| m.scale(s))
    }

    pub fn with_order(&self, n: u8) -> Self {
        self.map(|m| m.map(|j| j.with_order(n)))
    }

    /// Converts between fibers with the musical isomorphism.
    pub fn to_flavor(&self, flavor: Flavor) -> Self {
        if self.flavor == flavor || self.flavor == Flavor::Scalar || flavor == Flavor::Scalar {
            let mut out = self.clone();
            if flavor != Flavor::Scalar {
                out.flavor = flavor;
            }
            return out;
        }
        let mut out = self.map(|m| m.flat());
        out.flavor = flavor;
        out
    }

    /// Random polynomial-coefficient form restricted to the given grades.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        degree: usize,
        flavor: Flavor,
        grades: &[usize],
    ) -> Self {
        let mut out = CliffordForm::zero(degree, flavor);
        for m in tuples(degree) {
            for k in 0..16 {
                if grades.contains(&grade_of(k)) {
                    out.c[m].c[k] = random_polynomial(rng);
                }
            }
        }
        out
    }

    pub fn try_wedge_tensor(&self, b: &CliffordForm) -> Result<CliffordForm, FormError> {
        let flavor = self.flavor.join(b.flavor)?;
        let mut out = CliffordForm::zero(self.degree + b.degree, flavor);
        if self.degree + b.degree > 4 {
            return Ok(out);
        }
        for i in tuples(self.degree) {
            if self.c[i].is_zero() {
                continue;
            }
            for j in tuples(b.degree) {
                if i & j != 0 || b.c[j].is_zero() {
                    continue;
                }
                let p = self.c[i].gp(&b.c[j]).scale(wedge_sign(i, j));
                out.c[i | j] += p;
            }
        }
        Ok(out)
    }

    /// `A ⊗_∧ B`: Clifford product of coefficients, wedge of form parts.
    /// Degrees summing past four give the zero form.
    pub fn wedge_tensor(&self, b: &CliffordForm) -> CliffordForm {
        self.try_wedge_tensor(b).expect("incompatible form flavors")
    }

    /// `[A, B] = A ⊗_∧ B − (−1)^{pq} B ⊗_∧ A`.
    pub fn commutator(&self, b: &CliffordForm) -> CliffordForm {
        let s = if (self.degree * b.degree).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        self.wedge_tensor(b) - b.wedge_tensor(self).scale(s)
    }

    /// Exterior derivative of the coefficients.
    pub fn exterior_d(&self) -> CliffordForm {
        let mut out = CliffordForm::zero(self.degree + 1, self.flavor);
        if self.degree >= 4 {
            return out;
        }
        for k in tuples(self.degree + 1) {
            let mut acc = Multivector::<Jet>::zero();
            for v in 0..4 {
                if k & (1 << v) == 0 {
                    continue;
                }
                let rest = k ^ (1 << v);
                let d = self.c[rest].map(|j| j.derivative(v));
                acc += d.scale(wedge_sign(1 << v, rest));
            }
            out.c[k] = acc;
        }
        out
    }

    fn check_same(&self, b: &CliffordForm) -> Flavor {
        assert_eq!(self.degree, b.degree, "degree mismatch");
        self.flavor
            .join(b.flavor)
            .expect("incompatible form flavors")
    }
}

fn random_polynomial<R: Rng + ?Sized>(rng: &mut R) -> Jet {
    let mut c = [0.0; crate::jet::NMONO];
    for v in c.iter_mut() {
        *v = rng.gen_range(-1.0..1.0);
    }
    Jet::from_coeffs(c, crate::jet::MAX_ORDER)
}

impl Add<&CliffordForm> for &CliffordForm {
    type Output = CliffordForm;
    fn add(self, b: &CliffordForm) -> CliffordForm {
        let flavor = self.check_same(b);
        CliffordForm::from_fn(self.degree, flavor, |m| self.c[m] + b.c[m])
    }
}

impl Sub<&CliffordForm> for &CliffordForm {
    type Output = CliffordForm;
    fn sub(self, b: &CliffordForm) -> CliffordForm {
        let flavor = self.check_same(b);
        CliffordForm::from_fn(self.degree, flavor, |m| self.c[m] - b.c[m])
    }
}

impl Add for CliffordForm {
    type Output = CliffordForm;
    fn add(self, b: CliffordForm) -> CliffordForm {
        &self + &b
    }
}

impl Sub for CliffordForm {
    type Output = CliffordForm;
    fn sub(self, b: CliffordForm) -> CliffordForm {
        &self - &b
    }
}

impl Neg for CliffordForm {
    type Output = CliffordForm;
    fn neg(self) -> CliffordForm {
        self.scale(-1.0)
    }
}

/// Soldering form `θ = e_a ⊗ θ^a = e_μ ⊗ dx^μ`.
pub fn soldering_form(geo: &Geometry, flavor: Flavor) -> CliffordForm {
    let a: [Multivector<Jet>; 4] = std::array::from_fn(|mu| {
        let mut v = Multivector::<Jet>::zero();
        for a in 0..4 {
            v.c[1 << a] = geo.h[a][mu];
        }
        v
    });
    CliffordForm::one_form(Flavor::Tangent, a).to_flavor(flavor)
}

/// Connection form `ω = ω_μ ⊗ dx^μ` (bivector valued).
pub fn connection_form(geo: &Geometry, flavor: Flavor) -> CliffordForm {
    CliffordForm::one_form(Flavor::Tangent, geo.omega).to_flavor(flavor)
}

/// Coframe 1-forms `θ^a = h^a_μ dx^μ` with scalar coefficients.
pub fn coframe_forms(geo: &Geometry) -> [CliffordForm; 4] {
    std::array::from_fn(|a| CliffordForm::scalar_one_form(geo.h[a]))
}

fn expect_connection(omega: &CliffordForm) {
    assert_eq!(omega.degree(), 1, "connection must be a 1-form");
}

/// `DA = dA + ½[ω, A]`.
pub fn exterior_covariant_d(a: &CliffordForm, omega: &CliffordForm) -> CliffordForm {
    expect_connection(omega);
    a.exterior_d() + omega.commutator(a).scale(0.5)
}

/// `dA + (p/2)[ω, A]`, the degree-weighted variant.
pub fn weighted_exterior_covariant_d(a: &CliffordForm, omega: &CliffordForm) -> CliffordForm {
    expect_connection(omega);
    a.exterior_d() + omega.commutator(a).scale(a.degree() as f64 / 2.0)
}

/// Cartan differential `D^c 𝔠 = d𝔠 + ½[ω, 𝔠]` of a vector-valued form.
pub fn cartan_differential(c: &CliffordForm, omega: &CliffordForm) -> CliffordForm {
    debug_assert!(tuples(c.degree()).all(|m| c
        .coeff(m)
        .values()
        .grades_present(1e-300)
        .iter()
        .all(|&g| g == 1)));
    exterior_covariant_d(c, omega)
}

/// Frame-direction derivative of coefficients, `∂_{e_r} A = h_r^μ ∂_μ A_I`.
pub fn frame_partial(a: &CliffordForm, geo: &Geometry, r: usize) -> CliffordForm {
    a.map(|m| {
        let mut acc = Multivector::<Jet>::zero();
        for mu in 0..4 {
            let d = m.map(|j| j.derivative(mu));
            acc += d.scale_by(geo.e[r][mu]);
        }
        acc
    })
}

/// Extended covariant derivative `D_{e_r}A = ∂_{e_r}A + ½[ω_{e_r}, A]`.
/// Acts on the Clifford part only; form indices are not transported.
pub fn extended_covariant_derivative(a: &CliffordForm, geo: &Geometry, r: usize) -> CliffordForm {
    let om = geo.omega_frame[r];
    let om = match a.flavor() {
        Flavor::Cotangent => om.flat(),
        _ => om,
    };
    frame_partial(a, geo, r) + a.map(|m| om.commutator(m).scale(0.5))
}

/// Tensor covariant derivative along `e_r`: the extended derivative plus
/// Levi-Civita transport of the form indices.
pub fn tensor_covariant_derivative(a: &CliffordForm, geo: &Geometry, r: usize) -> CliffordForm {
    let ext = extended_covariant_derivative(a, geo, r);
    let p = a.degree();
    if p == 0 {
        return ext;
    }
    // ∇_ν A_{μ1…μp} ∋ −Γ^λ_{ν μk} A_{…λ…}; contract ν with h_r^ν
    let gam = &geo.christoffel;
    let mut corr = CliffordForm::zero(p, a.flavor());
    for mask in tuples(p) {
        let idx: Vec<usize> = (0..4).filter(|b| mask & (1 << b) != 0).collect();
        let mut acc = Multivector::<Jet>::zero();
        for (k, &mu) in idx.iter().enumerate() {
            for lam in 0..4 {
                let mut j = idx.clone();
                j[k] = lam;
                let coeff = component_jet(a, &j);
                if coeff.is_zero() {
                    continue;
                }
                let mut w = Jet::zero();
                for nu in 0..4 {
                    w += geo.e[r][nu] * gam[lam][nu][mu];
                }
                acc -= coeff.scale_by(w);
            }
        }
        corr.c[mask] = acc;
    }
    ext + corr
}

/// Jet-valued `A(∂_{μ₁}, …)` for arbitrary index order.
fn component_jet(a: &CliffordForm, idx: &[usize]) -> Multivector<Jet> {
    let mut mask = 0usize;
    let mut sign = 1.0;
    for (k, &i) in idx.iter().enumerate() {
        if mask & (1 << i) != 0 {
            return Multivector::zero();
        }
        if idx[k + 1..].iter().filter(|&&j| j < i).count() % 2 == 1 {
            sign = -sign;
        }
        mask |= 1 << i;
    }
    a.c[mask].scale(sign)
}

/// `Σ_r θ^r ∧ parts[r]`; with `parts[r] = D_{e_r}A` this rebuilds `DA`.
pub fn reassemble(parts: &[CliffordForm; 4], geo: &Geometry) -> CliffordForm {
    let th = coframe_forms(geo);
    let mut out = CliffordForm::zero(parts[0].degree() + 1, parts[0].flavor());
    for r in 0..4 {
        out = out + th[r].wedge_tensor(&parts[r]);
    }
    out
}

/// Torsion `Θ = Dθ`.
pub fn torsion(geo: &Geometry, omega: &CliffordForm) -> CliffordForm {
    exterior_covariant_d(&soldering_form(geo, omega.flavor()), omega)
}

/// Curvature 2-form `𝓡 = dω + ¼[ω, ω] = ½ R_μν dx^μ∧dx^ν`.
pub fn curvature_form(omega: &CliffordForm) -> CliffordForm {
    omega.exterior_d() + omega.commutator(omega).scale(0.25)
}

/// Curvature bivectors `R_μν` read off a curvature 2-form.
pub fn curvature_bivectors(r: &CliffordForm) -> [[Multivector; 4]; 4] {
    std::array::from_fn(|mu| std::array::from_fn(|nu| r.component(&[mu, nu])))
}

/// Scalar connection 1-forms `ω^a_b = ω_μ^a_b dx^μ`, indexed `[a][b]`.
pub fn connection_one_forms(geo: &Geometry) -> [[CliffordForm; 4]; 4] {
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let f: [Jet; 4] = std::array::from_fn(|mu| {
                let mut s = Jet::zero();
                for c in 0..4 {
                    s += geo.h[c][mu].with_order(2) * geo.conn[c][a][b];
                }
                s
            });
            CliffordForm::scalar_one_form(f)
        })
    })
}

/// Cartan curvature 2-forms `𝓡^a_b = dω^a_b + ω^a_c ∧ ω^c_b`.
pub fn cartan_two_forms(geo: &Geometry) -> [[CliffordForm; 4]; 4] {
    let om = connection_one_forms(geo);
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let mut r = om[a][b].exterior_d();
            for c in 0..4 {
                r = r + om[a][c].wedge_tensor(&om[c][b]);
            }
            r
        })
    })
}

/// Bivector-valued curvature `½ 𝓡^{ab} e_a e_b` rebuilt from Cartan 2-forms.
pub fn bivectors_from_cartan(two: &[[CliffordForm; 4]; 4]) -> CliffordForm {
    CliffordForm::from_fn(2, Flavor::Tangent, |m| {
        let mut bv = Multivector::<Jet>::zero();
        for a in 0..4 {
            for b in a + 1..4 {
                // 𝓡^{ab} = 𝓡^a_b η^{bb}
                bv.c[(1 << a) | (1 << b)] = two[a][b].coeff(m).c[0].scale(ETA[b]);
            }
        }
        bv
    })
}

/// Cartan 2-forms rebuilt from a bivector-valued curvature form.
pub fn cartan_from_bivectors(r: &CliffordForm) -> [[CliffordForm; 4]; 4] {
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            CliffordForm::from_fn(2, Flavor::Scalar, |m| {
                let bv = r.coeff(m);
                let v = if a < b {
                    bv.c[(1 << a) | (1 << b)]
                } else if a > b {
                    -bv.c[(1 << a) | (1 << b)]
                } else {
                    Jet::zero()
                };
                Multivector::scalar(v.scale(ETA[b]))
            })
        })
    })
}

/// Coordinate Riemann components `R_{μνρσ}` (first pair from the bivector,
/// second pair the form indices).
pub fn riemann_coordinate(geo: &Geometry) -> [[[[f64; 4]; 4]; 4]; 4] {
    let h = geo.h_values();
    let mut out = [[[[0.0; 4]; 4]; 4]; 4];
    for rho in 0..4 {
        for sig in 0..4 {
            if rho == sig {
                continue;
            }
            let bv = geo.curvature(rho, sig).bivector_components();
            for mu in 0..4 {
                for nu in 0..4 {
                    let mut s = 0.0;
                    for a in 0..4 {
                        for b in 0..4 {
                            s += ETA[a] * h[a][mu] * ETA[b] * h[b][nu] * bv[a][b];
                        }
                    }
                    out[mu][nu][rho][sig] = s;
                }
            }
        }
    }
    out
}

/// Max violation of the pair antisymmetries and pair exchange symmetry.
pub fn riemann_symmetry_residual(r: &[[[[f64; 4]; 4]; 4]; 4]) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let v = r[a][b][c][d];
                    worst = worst
                        .max((v + r[b][a][c][d]).abs())
                        .max((v + r[a][b][d][c]).abs())
                        .max((v - r[c][d][a][b]).abs());
                }
            }
        }
    }
    worst
}

/// Max norm of the Bianchi 3-form `D𝓡`.
pub fn bianchi_form_residual(geo: &Geometry) -> f64 {
    let om = connection_form(geo, Flavor::Tangent);
    exterior_covariant_d(&curvature_form(&om), &om).max_norm()
}

/// Residual of `D²A = ½[𝓡, A]`.
pub fn dsquared_residual(a: &CliffordForm, omega: &CliffordForm) -> f64 {
    let r = curvature_form(omega);
    let dd = exterior_covariant_d(&exterior_covariant_d(a, omega), omega);
    (dd - r.commutator(a).scale(0.5)).max_norm()
}

/// `(|D³A − ½[𝓡, DA]|, |[D𝓡, A]|)`; both vanish when `D𝓡 = 0`.
pub fn dcubed_residuals(a: &CliffordForm, omega: &CliffordForm) -> (f64, f64) {
    let r = curvature_form(omega);
    let da = exterior_covariant_d(a, omega);
    let ddd = exterior_covariant_d(&exterior_covariant_d(&da, omega), omega);
    let lhs = (ddd - r.commutator(&da).scale(0.5)).max_norm();
    let dr = exterior_covariant_d(&r, omega);
    (lhs, dr.commutator(a).max_norm())
}

/// Residual of `[D_ρ, D_λ] v = R_ρλ ⌞ v` over coordinate pairs, for the
/// vector field `v` given as a Tangent 0-form.
pub fn holonomy_residual(v: &CliffordForm, geo: &Geometry) -> f64 {
    assert_eq!(v.degree(), 0);
    let d = |rho: usize, x: &Multivector<Jet>| {
        x.map(|j| j.derivative(rho)) + geo.omega[rho].commutator(x).scale(0.5)
    };
    let x = *v.coeff(0);
    let mut worst: f64 = 0.0;
    for rho in 0..4 {
        for lam in rho + 1..4 {
            let lhs = d(rho, &d(lam, &x)) - d(lam, &d(rho, &x));
            let rhs = geo.curvature(rho, lam).right_contract(&x.values());
            worst = worst.max((lhs.values() - rhs).norm());
        }
    }
    worst
}

/// Coordinate vector fields `e_μ = h^a_μ e_a` as Tangent 0-forms.
pub fn coordinate_vector_fields(geo: &Geometry) -> [CliffordForm; 4] {
    std::array::from_fn(|mu| {
        let mut v = Multivector::<Jet>::zero();
        for a in 0..4 {
            v.c[1 << a] = geo.h[a][mu];
        }
        CliffordForm::function(Flavor::Tangent, v)
    })
}

/// Graded antisymmetry `[A,B] − (−1)^{1+pq}[B,A]`.
pub fn graded_antisymmetry_residual(a: &CliffordForm, b: &CliffordForm) -> f64 {
    let s = if (1 + a.degree() * b.degree()).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    (a.commutator(b) - b.commutator(a).scale(s)).max_norm()
}

/// `(−1)^{pr}[[A,B],C] + (−1)^{qp}[[B,C],A] + (−1)^{rq}[[C,A],B]`.
pub fn graded_jacobi_residual(a: &CliffordForm, b: &CliffordForm, c: &CliffordForm) -> f64 {
    let (p, q, r) = (a.degree(), b.degree(), c.degree());
    let sg = |n: usize| if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let t = a.commutator(b).commutator(c).scale(sg(p * r))
        + b.commutator(c).commutator(a).scale(sg(q * p))
        + c.commutator(a).commutator(b).scale(sg(r * q));
    t.max_norm()
}

/// `(p+q)[ω, A⊗B] − p[ω,A]⊗B − (−1)^p q A⊗[ω,B]`.
pub fn weighted_derivation_residual(
    omega: &CliffordForm,
    a: &CliffordForm,
    b: &CliffordForm,
) -> f64 {
    let (p, q) = (a.degree() as f64, b.degree() as f64);
    let sp = if a.degree().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let lhs = omega.commutator(&a.wedge_tensor(b)).scale(p + q);
    let rhs = omega.commutator(a).wedge_tensor(b).scale(p)
        + a.wedge_tensor(&omega.commutator(b)).scale(sp * q);
    (lhs - rhs).max_norm()
}

/// `[ω, A⊗B] − [ω,A]⊗B − (−1)^p A⊗[ω,B]` for a 1-form `ω`.
pub fn derivation_residual(omega: &CliffordForm, a: &CliffordForm, b: &CliffordForm) -> f64 {
    let sp = if a.degree().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let lhs = omega.commutator(&a.wedge_tensor(b));
    let rhs = omega.commutator(a).wedge_tensor(b) + a.wedge_tensor(&omega.commutator(b)).scale(sp);
    (lhs - rhs).max_norm()
}

/// Leibniz rule `D(A⊗B) − DA⊗B − (−1)^p A⊗DB`.
pub fn leibniz_residual(a: &CliffordForm, b: &CliffordForm, omega: &CliffordForm) -> f64 {
    let sp = if a.degree().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let lhs = exterior_covariant_d(&a.wedge_tensor(b), omega);
    let rhs = exterior_covariant_d(a, omega).wedge_tensor(b)
        + a.wedge_tensor(&exterior_covariant_d(b, omega)).scale(sp);
    (lhs - rhs).max_norm()
}

/// `d[A,B] − [dA,B] − (−1)^p[A,dB]`.
pub fn d_commutator_residual(a: &CliffordForm, b: &CliffordForm) -> f64 {
    let sp = if a.degree().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let lhs = a.commutator(b).exterior_d();
    let rhs = a.exterior_d().commutator(b) + a.commutator(&b.exterior_d()).scale(sp);
    (lhs - rhs).max_norm()
}

/// `D𝔠 − D^c𝔠 − ((p−1)/2)[ω, 𝔠]` with `D` the degree-weighted operator.
pub fn cartan_relation_residual(c: &CliffordForm, omega: &CliffordForm) -> f64 {
    let p = c.degree() as f64;
    let lhs = weighted_exterior_covariant_d(c, omega);
    let rhs = cartan_differential(c, omega) + omega.commutator(c).scale((p - 1.0) / 2.0);
    (lhs - rhs).max_norm()
}

/// Scalar form part Hodge star with the tetrad metric, applied to each
/// Clifford component of `A`.
pub fn form_hodge(a: &CliffordForm, geo: &Geometry) -> CliffordForm {
    let basis = FrameBasis::new(geo);
    let p = a.degree();
    let mut out = CliffordForm::zero(4 - p, a.flavor());
    for k in 0..16 {
        let s = Multivector::<Jet>::from_fn(|m| {
            if grade_of(m) == p {
                a.coeff(m).c[k]
            } else {
                Jet::zero()
            }
        });
        if s.is_zero() {
            continue;
        }
        let star = basis.to_coordinates(&basis.to_frame(&s).hodge());
        for m in tuples(4 - p) {
            out.c[m].c[k] = star.c[m];
        }
    }
    out
}

/// Inverse of [`form_hodge`].
pub fn form_hodge_inv(a: &CliffordForm, geo: &Geometry) -> CliffordForm {
    let basis = FrameBasis::new(geo);
    let p = a.degree();
    let mut out = CliffordForm::zero(4 - p, a.flavor());
    for k in 0..16 {
        let s = Multivector::<Jet>::from_fn(|m| {
            if grade_of(m) == p {
                a.coeff(m).c[k]
            } else {
                Jet::zero()
            }
        });
        if s.is_zero() {
            continue;
        }
        let star = basis.to_coordinates(&basis.to_frame(&s).hodge_inv());
        for m in tuples(4 - p) {
            out.c[m].c[k] = star.c[m];
        }
    }
    out
}

/// Change of basis between coordinate differentials `dx^I` and orthonormal
/// coframe blades `θ^J` for scalar forms stored as multivectors.
///
/// A scalar form in the coordinate basis is a `Multivector<Jet>` indexed by
/// coordinate masks; only its exterior structure is meaningful.
pub struct FrameBasis {
    dx_in_theta: [Multivector<Jet>; 16],
    theta_in_dx: [Multivector<Jet>; 16],
}

impl FrameBasis {
    pub fn new(geo: &Geometry) -> Self {
        // dx^μ = h_a^μ θ^a ;  θ^a = h^a_μ dx^μ
        let dx: [Multivector<Jet>; 4] = std::array::from_fn(|mu| {
            Multivector::from_fn(|k| {
                if k.count_ones() == 1 {
                    geo.e[k.trailing_zeros() as usize][mu]
                } else {
                    Jet::zero()
                }
            })
        });
        let th: [Multivector<Jet>; 4] = std::array::from_fn(|a| {
            Multivector::from_fn(|k| {
                if k.count_ones() == 1 {
                    geo.h[a][k.trailing_zeros() as usize]
                } else {
                    Jet::zero()
                }
            })
        });
        let build = |v: &[Multivector<Jet>; 4]| -> [Multivector<Jet>; 16] {
            std::array::from_fn(|m| {
                let mut acc = Multivector::<Jet>::one();
                for b in 0..4 {
                    if m & (1 << b) != 0 {
                        acc = acc.wedge(&v[b]);
                    }
                }
                acc
            })
        };
        FrameBasis {
            dx_in_theta: build(&dx),
            theta_in_dx: build(&th),
        }
    }

    /// Coordinate-mask components to coframe-blade components.
    pub fn to_frame(&self, s: &Multivector<Jet>) -> Multivector<Jet> {
        let mut out = Multivector::<Jet>::zero();
        for m in 0..16 {
            if !s.c[m].is_zero() {
                out += self.dx_in_theta[m].scale_by(s.c[m]);
            }
        }
        out
    }

    /// Coframe-blade components to coordinate-mask components.
    pub fn to_coordinates(&self, s: &Multivector<Jet>) -> Multivector<Jet> {
        let mut out = Multivector::<Jet>::zero();
        for m in 0..16 {
            if !s.c[m].is_zero() {
                out += self.theta_in_dx[m].scale_by(s.c[m]);
            }
        }
        out
    }
}

/// Exterior derivative of a scalar form stored by coordinate masks.
pub fn scalar_d(s: &Multivector<Jet>) -> Multivector<Jet> {
    let mut out = Multivector::<Jet>::zero();
    for k in 1..16 {
        let mut acc = Jet::zero();
        let mut any = false;
        for v in 0..4 {
            if k & (1 << v) == 0 {
                continue;
            }
            let rest = k ^ (1 << v);
            if s.c[rest].is_zero() {
                continue;
            }
            any = true;
            acc += s.c[rest].derivative(v).scale(wedge_sign(1 << v, rest));
        }
        if any {
            out.c[k] = acc;
        }
    }
    out
}
