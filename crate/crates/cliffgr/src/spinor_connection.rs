//! Spinor and paravector covariant derivatives, Sachs' total derivative,
//! the `Q ⊗ Q̌` split, and frame-constraint diagnostics.
//!
//! Paravectors are `q_μ = e_μ e_0 = h^a_μ σ_a` with `σ_a = e_a e_0`, so
//! `σ_0 = 1`. Their check companions flip the scalar leg:
//! `q̌_μ = h^a_μ σ̌_a`, `σ̌_0 = −σ_0`, `σ̌_j = σ_j`.

use crate::chart::Geometry;
use crate::jet::Jet;
use crate::multivector::{Multivector, ETA};
use crate::spinor::{idempotent, PauliMatrix2, PauliNumber};
use num_complex::Complex64 as C;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpinorError {
    #[error("field is not in the left ideal (residual {0:e})")]
    NotUndotted(f64),
    #[error("field is not in the right ideal (residual {0:e})")]
    NotDotted(f64),
    #[error("field has an odd part (norm {0:e})")]
    NotEven(f64),
}

/// Scalar-leg flip `σ̌`: negates the scalar part, keeps the rest.
pub fn check<S: crate::Scalar>(p: &Multivector<S>) -> Multivector<S> {
    let mut out = *p;
    out.c[0] = -out.c[0];
    out
}

/// `σ_a = e_a e_0`.
pub fn sigma_frame(a: usize) -> Multivector {
    Multivector::basis(a) * Multivector::basis(0)
}

/// Max of `|σ_a σ̌_b + σ_b σ̌_a + 2η_ab|` over all pairs.
pub fn sigma_check_residual() -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let s =
                sigma_frame(a) * check(&sigma_frame(b)) + sigma_frame(b) * check(&sigma_frame(a));
            let eta = if a == b { ETA[a] } else { 0.0 };
            worst = worst.max((s + Multivector::scalar(2.0 * eta)).norm());
        }
    }
    worst
}

/// Hermitian conjugate on even elements, `X† = e_0 X̃ e_0`.
pub fn dagger(x: &Multivector) -> Multivector {
    let e0 = Multivector::basis(0);
    e0 * x.reverse() * e0
}

/// Paravector fields `q_μ`, `q̌_μ` and their raised versions.
#[derive(Clone, Debug)]
pub struct ParavectorField {
    pub q: [Multivector<Jet>; 4],
    pub q_check: [Multivector<Jet>; 4],
    pub q_upper: [Multivector<Jet>; 4],
    pub q_check_upper: [Multivector<Jet>; 4],
}

impl ParavectorField {
    pub fn new(geo: &Geometry) -> Self {
        let q: [Multivector<Jet>; 4] = std::array::from_fn(|mu| {
            let mut v = Multivector::<Jet>::zero();
            for a in 0..4 {
                v += sigma_frame(a).lift::<Jet>().scale_by(geo.h[a][mu]);
            }
            v
        });
        let q_check = q.map(|m| check(&m));
        let raise = |x: &[Multivector<Jet>; 4]| -> [Multivector<Jet>; 4] {
            std::array::from_fn(|mu| {
                let mut v = Multivector::<Jet>::zero();
                for nu in 0..4 {
                    v += x[nu].scale_by(geo.ginv[mu][nu]);
                }
                v
            })
        };
        ParavectorField {
            q_upper: raise(&q),
            q_check_upper: raise(&q_check),
            q,
            q_check,
        }
    }

    pub fn values(&self) -> [Multivector; 4] {
        self.q.map(|m| m.values())
    }

    /// Largest odd or grade-4 component among the `q_μ`.
    pub fn paravector_residual(&self) -> f64 {
        self.q
            .iter()
            .map(|m| {
                let v = m.values();
                (v.odd().norm()).max(v.grade(4).norm())
            })
            .fold(0.0, f64::max)
    }

    /// `q^μ q̌_μ`.
    pub fn trace_contraction(&self) -> Multivector {
        let mut s = Multivector::zero();
        for mu in 0..4 {
            s += self.q_upper[mu].values() * self.q_check[mu].values();
        }
        s
    }

    /// `q^μ X q̌_μ`.
    pub fn sandwich(&self, x: &Multivector) -> Multivector {
        let mut s = Multivector::zero();
        for mu in 0..4 {
            s += self.q_upper[mu].values() * *x * self.q_check[mu].values();
        }
        s
    }

    /// `−½ q̌_μ (∂_ρ q^μ + Γ^μ_{ρτ} q^τ)`.
    pub fn omega_from_q(&self, geo: &Geometry, rho: usize) -> Multivector {
        let gam = geo.christoffels();
        let mut s = Multivector::zero();
        for mu in 0..4 {
            let mut nab = self.q_upper[mu].map(|j| j.derivative(rho)).values();
            for tau in 0..4 {
                nab += self.q_upper[tau].values().scale(gam[mu][rho][tau]);
            }
            s += self.q_check[mu].values() * nab;
        }
        s.scale(-0.5)
    }
}

/// Connection bivector along `e_a` and its `σ`-basis image.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorConnectionCoeffs {
    pub bivector: Multivector,
    /// `Ω_a^b` with `ω_{e_a} = Ω_a^b σ_b` (complex unit `θ^5 ↦ i`).
    pub components: [C; 4],
    pub matrix: PauliMatrix2,
}

impl SpinorConnectionCoeffs {
    /// `|Ω − εΩ†ε|`.
    pub fn epsilon_conjugation_residual(&self) -> f64 {
        let e = PauliMatrix2::epsilon();
        self.matrix.sub(&(e * self.matrix.dagger() * e)).max_abs()
    }

    /// `|Ω − εΩᵀε|`, the transpose form valid for any traceless `Ω`.
    pub fn epsilon_transpose_residual(&self) -> f64 {
        let e = PauliMatrix2::epsilon();
        let mut t = self.matrix;
        for r in 0..2 {
            for c in 0..2 {
                t.m[r][c] = self.matrix.m[c][r];
            }
        }
        self.matrix.sub(&(e * t * e)).max_abs()
    }
}

/// `ω_{e_a}` re-expressed in the `σ` basis with its matrix image.
pub fn spinor_omega(geo: &Geometry, a: usize) -> SpinorConnectionCoeffs {
    let bivector = geo.omega_frame[a].values();
    let matrix = PauliNumber::new(bivector).to_matrix();
    let mut components = [C::new(0.0, 0.0); 4];
    components[0] = matrix.trace() * 0.5;
    for k in 1..4 {
        components[k] = (matrix * PauliMatrix2::pauli(k)).trace() * 0.5;
    }
    SpinorConnectionCoeffs {
        bivector,
        components,
        matrix,
    }
}

/// Bivector `ω_v = v^a ω_{e_a}` as a jet.
fn omega_along(geo: &Geometry, v: &[f64; 4]) -> Multivector<Jet> {
    let mut s = Multivector::<Jet>::zero();
    for a in 0..4 {
        if v[a] != 0.0 {
            s += geo.omega_frame[a].scale(v[a]);
        }
    }
    s
}

/// `∂_v F = v^a h_a^μ ∂_μ F` at the base point.
pub fn directional_derivative(f: &Multivector<Jet>, geo: &Geometry, v: &[f64; 4]) -> Multivector {
    let mut s = Multivector::zero();
    for a in 0..4 {
        if v[a] == 0.0 {
            continue;
        }
        for mu in 0..4 {
            let w = v[a] * geo.e[a][mu].value();
            s += f.map(|j| j.derivative(mu)).values().scale(w);
        }
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinorFlavor {
    /// Left-ideal element, `D^s ξ = ∂ξ + ½ω ξ`.
    Undotted,
    /// Right-ideal element, `D^s ξ̇ = ∂ξ̇ − ½ξ̇ ω`.
    Dotted,
    /// Even field, `D P = ∂P + ½[ω, P]`.
    Pauli,
}

const IDEAL_TOL: f64 = 1e-10;

/// Spinor covariant derivative along the frame vector `v = v^a e_a`.
pub fn spinor_covariant_derivative(
    obj: &Multivector<Jet>,
    v: &[f64; 4],
    flavor: SpinorFlavor,
    geo: &Geometry,
) -> Result<Multivector, SpinorError> {
    let x = obj.values();
    let e = *idempotent().mv();
    let scale = 1.0 + x.norm();
    match flavor {
        SpinorFlavor::Undotted => {
            let r = (x * e - x).norm();
            if r > IDEAL_TOL * scale {
                return Err(SpinorError::NotUndotted(r));
            }
        }
        SpinorFlavor::Dotted => {
            let r = (e * x - x).norm();
            if r > IDEAL_TOL * scale {
                return Err(SpinorError::NotDotted(r));
            }
        }
        SpinorFlavor::Pauli => {
            let r = x.odd().norm();
            if r > IDEAL_TOL * scale {
                return Err(SpinorError::NotEven(r));
            }
        }
    }
    let om = omega_along(geo, v).values();
    let d = directional_derivative(obj, geo, v);
    Ok(match flavor {
        SpinorFlavor::Undotted => d + (om * x).scale(0.5),
        SpinorFlavor::Dotted => d - (x * om).scale(0.5),
        SpinorFlavor::Pauli => d + om.commutator(&x).scale(0.5),
    })
}

/// `D^s(Tξ) − (DT)ξ − T D^sξ` for an even field `T` and undotted `ξ`.
pub fn spinor_leibniz_residual(
    t: &Multivector<Jet>,
    xi: &Multivector<Jet>,
    v: &[f64; 4],
    geo: &Geometry,
) -> f64 {
    let prod = *t * *xi;
    let lhs =
        spinor_covariant_derivative(&prod, v, SpinorFlavor::Undotted, geo).expect("left ideal");
    let dt = spinor_covariant_derivative(t, v, SpinorFlavor::Pauli, geo).expect("even");
    let dxi = spinor_covariant_derivative(xi, v, SpinorFlavor::Undotted, geo).expect("left ideal");
    (lhs - dt * xi.values() - t.values() * dxi).norm()
}

/// How the dotted matrix rule is written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DottedRule {
    /// `∂ξ̇ − ½ ξ̇ Ω`.
    Literal,
    /// `∂ξ̇ − ½ ξ̇ εΩ†ε`, the ε-conjugate of the undotted rule.
    Conjugated,
}

fn row_times(row: [C; 2], m: &PauliMatrix2) -> [C; 2] {
    [0, 1].map(|c| row[0] * m.m[0][c] + row[1] * m.m[1][c])
}

fn conj_eps(col: [C; 2]) -> [C; 2] {
    crate::spinor::DottedSpinor::from_undotted(col).row
}

/// Compares the dotted rule with the ε-conjugated Hermitian transpose of the
/// undotted rule, for a matrix spinor `ξ` with directional derivative `dξ`.
pub fn dotted_consistency_residual(
    xi: [C; 2],
    dxi: [C; 2],
    omega: &PauliMatrix2,
    rule: DottedRule,
) -> f64 {
    let dxi_cov = [0, 1].map(|r| dxi[r] + 0.5 * (omega.m[r][0] * xi[0] + omega.m[r][1] * xi[1]));
    let via_conjugation = conj_eps(dxi_cov);
    let xd = conj_eps(xi);
    let dxd = conj_eps(dxi);
    let e = PauliMatrix2::epsilon();
    let m = match rule {
        DottedRule::Literal => *omega,
        DottedRule::Conjugated => e * omega.dagger() * e,
    };
    let t = row_times(xd, &m);
    (0..2)
        .map(|c| (dxd[c] - 0.5 * t[c] - via_conjugation[c]).norm())
        .fold(0.0, f64::max)
}

/// `D_v q_μ = ∂_v q_μ + ½ ω_v q_μ + ½ q_μ ω_v†`.
pub fn paravector_derivative(
    q: &ParavectorField,
    geo: &Geometry,
    v: &[f64; 4],
    mu: usize,
) -> Multivector {
    let om = omega_along(geo, v).values();
    let qm = q.q[mu].values();
    directional_derivative(&q.q[mu], geo, v) + (om * qm).scale(0.5) + (qm * dagger(&om)).scale(0.5)
}

/// Coordinate frame vector `e_μ = h^a_μ e_a`.
fn coordinate_vector(geo: &Geometry, mu: usize) -> Multivector<Jet> {
    let mut v = Multivector::<Jet>::zero();
    for a in 0..4 {
        v.c[1 << a] = geo.h[a][mu];
    }
    v
}

/// `D_v Y = ∂_v Y + ½[ω_v, Y]` for a Clifford field with frame coefficients.
pub fn clifford_derivative(y: &Multivector<Jet>, geo: &Geometry, v: &[f64; 4]) -> Multivector {
    directional_derivative(y, geo, v)
        + omega_along(geo, v)
            .values()
            .commutator(&y.values())
            .scale(0.5)
}

/// `(D_v e_μ) e_0`.
pub fn transported_leg_part(geo: &Geometry, v: &[f64; 4], mu: usize) -> Multivector {
    clifford_derivative(&coordinate_vector(geo, mu), geo, v) * Multivector::basis(0)
}

/// `(D_v e_μ) e_0 + e_μ (D_v e_0)`, the full product rule on `e_μ e_0`.
pub fn paravector_product_rule(geo: &Geometry, v: &[f64; 4], mu: usize) -> Multivector {
    let e0 = Multivector::<Jet>::basis(0);
    transported_leg_part(geo, v, mu)
        + coordinate_vector(geo, mu).values() * clifford_derivative(&e0, geo, v)
}

/// Placement of `ω` in the last term of Sachs' derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SachsVariant {
    /// `½ q_μ ω_ν†`, matching the matrix form with `Ω†`.
    Dagger,
    /// `½ q_μ ω_ν` as printed in the Clifford form.
    Literal,
}

/// `D^S_{e_ν} q_μ = ∂_ν q_μ + ½ω_ν q_μ + ½q_μ ω_ν(†) − Γ^α_{νμ} q_α`.
pub fn sachs_total_derivative(
    q: &ParavectorField,
    geo: &Geometry,
    nu: usize,
    mu: usize,
    variant: SachsVariant,
) -> Multivector {
    let om = geo.omega[nu].values();
    let qm = q.q[mu].values();
    let gam = geo.christoffels();
    let last = match variant {
        SachsVariant::Dagger => qm * dagger(&om),
        SachsVariant::Literal => qm * om,
    };
    let mut out =
        q.q[mu].map(|j| j.derivative(nu)).values() + (om * qm).scale(0.5) + last.scale(0.5);
    for al in 0..4 {
        out -= q.q[al].values().scale(gam[al][nu][mu]);
    }
    out
}

/// Max over `ν, μ` of `|D^S_{e_ν} q_μ|`.
pub fn sachs_residual(geo: &Geometry, variant: SachsVariant) -> f64 {
    let q = ParavectorField::new(geo);
    let mut worst: f64 = 0.0;
    for nu in 0..4 {
        for mu in 0..4 {
            worst = worst.max(sachs_total_derivative(&q, geo, nu, mu, variant).norm());
        }
    }
    worst
}

/// Symmetric and antisymmetric parts of `q_μ q̌_ν`.
#[derive(Clone, Debug)]
pub struct QDecomposition {
    /// `½(q_μ q̌_ν + q_ν q̌_μ)`; equals `−g_μν`.
    pub symmetric: [[Multivector; 4]; 4],
    /// `F'_μν = ½(q_μ q̌_ν − q_ν q̌_μ)`.
    pub antisymmetric: [[Multivector; 4]; 4],
    /// `−½ ε^k_{ij} h^i_μ h^j_ν i σ_k` with the formal unit `i = −σ_1σ_2σ_3`.
    pub spatial_formula: [[Multivector; 4]; 4],
    pub metric: [[f64; 4]; 4],
}

impl QDecomposition {
    /// `max |sym_μν + g_μν|`.
    pub fn metric_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                worst = worst.max(
                    (self.symmetric[mu][nu] + Multivector::scalar(self.metric[mu][nu])).norm(),
                );
            }
        }
        worst
    }

    pub fn antisymmetric_norm(&self) -> f64 {
        self.antisymmetric
            .iter()
            .flatten()
            .map(|m| m.norm())
            .fold(0.0, f64::max)
    }

    /// Boost part (`σ_k` components) of `F'`.
    pub fn boost_part(&self, mu: usize, nu: usize) -> Multivector {
        let f = self.antisymmetric[mu][nu];
        Multivector::from_fn(|k| {
            if k & 1 == 1 && k.count_ones() == 2 {
                f.c[k]
            } else {
                0.0
            }
        })
    }

    /// Rotation part (`iσ_k` components) of `F'`.
    pub fn rotation_part(&self, mu: usize, nu: usize) -> Multivector {
        let f = self.antisymmetric[mu][nu];
        Multivector::from_fn(|k| {
            if k & 1 == 0 && k.count_ones() == 2 {
                f.c[k]
            } else {
                0.0
            }
        })
    }
}

fn levi_civita3(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

pub fn q_tensor_decomposition(geo: &Geometry) -> QDecomposition {
    let q = ParavectorField::new(geo);
    let qv = q.values();
    let qc = q.q_check.map(|m| m.values());
    let h = geo.h_values();
    let unit = -(sigma_frame(1) * sigma_frame(2) * sigma_frame(3));
    let mut symmetric = [[Multivector::zero(); 4]; 4];
    let mut antisymmetric = [[Multivector::zero(); 4]; 4];
    let mut spatial_formula = [[Multivector::zero(); 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let a = qv[mu] * qc[nu];
            let b = qv[nu] * qc[mu];
            symmetric[mu][nu] = (a + b).scale(0.5);
            antisymmetric[mu][nu] = (a - b).scale(0.5);
            let mut s = Multivector::zero();
            for i in 1..4 {
                for j in 1..4 {
                    for k in 1..4 {
                        let e = levi_civita3(i, j, k);
                        if e != 0.0 {
                            s += (unit * sigma_frame(k)).scale(-0.5 * e * h[i][mu] * h[j][nu]);
                        }
                    }
                }
            }
            spatial_formula[mu][nu] = s;
        }
    }
    QDecomposition {
        symmetric,
        antisymmetric,
        spatial_formula,
        metric: geo.metric(),
    }
}

/// Outcome of the inertial-frame conditions for the tetrad's `e_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintReport {
    /// `max_a |D_{e_a} e_0|`.
    pub de0: f64,
    /// `|D_{e_0} e_0|`.
    pub geodesic: f64,
    /// `max_i |D_{e_0} e_i|`.
    pub fermi: f64,
    /// `max_b |Ric(e_0, e_b)|`.
    pub ric_e0: f64,
    /// `Ric(e_0, e_0)`.
    pub ric_00: f64,
    /// `max_{a,b} |D_{e_a} e_b|`.
    pub frame_derivative: f64,
    /// `max |R_ab|` over frame curvature bivectors.
    pub curvature: f64,
    pub tol: f64,
}

impl ConstraintReport {
    pub fn inertial(&self) -> bool {
        self.de0 <= self.tol
    }
    pub fn ricci_compatible(&self) -> bool {
        self.ric_e0 <= self.tol
    }
    pub fn geodesic_frame(&self) -> bool {
        self.geodesic <= self.tol
    }
    pub fn fermi_transported(&self) -> bool {
        self.fermi <= self.tol
    }
    /// All frame derivatives vanish, forcing a flat connection.
    pub fn teleparallel(&self) -> bool {
        self.frame_derivative <= self.tol
    }
}

/// `D_{e_a} e_b = ½[ω_{e_a}, e_b]`.
pub fn frame_derivative(geo: &Geometry, a: usize, b: usize) -> Multivector {
    geo.omega_frame[a]
        .values()
        .commutator(&Multivector::basis(b))
        .scale(0.5)
}

pub fn inertial_constraint_check(geo: &Geometry, tol: f64) -> ConstraintReport {
    let ric = geo.ricci_tensor();
    let mut de0: f64 = 0.0;
    let mut all: f64 = 0.0;
    let mut fermi: f64 = 0.0;
    for a in 0..4 {
        de0 = de0.max(frame_derivative(geo, a, 0).norm());
        for b in 0..4 {
            all = all.max(frame_derivative(geo, a, b).norm());
        }
    }
    for i in 1..4 {
        fermi = fermi.max(frame_derivative(geo, 0, i).norm());
    }
    let mut curvature: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            curvature = curvature.max(geo.curvature_frame(a, b).norm());
        }
    }
    // Ric(e_0, e_b) from coordinate components
    let e = geo.e_values();
    let mut ric_e0: f64 = 0.0;
    let mut ric_00 = 0.0;
    for b in 0..4 {
        let mut s = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                s += e[0][mu] * e[b][nu] * ric[mu][nu];
            }
        }
        if b == 0 {
            ric_00 = s;
        }
        ric_e0 = ric_e0.max(s.abs());
    }
    ConstraintReport {
        de0,
        geodesic: frame_derivative(geo, 0, 0).norm(),
        fermi,
        ric_e0,
        ric_00,
        frame_derivative: all,
        curvature,
        tol,
    }
}

/// `max_{μ,i} |D_{e_μ}(e_i e_0)|`.
pub fn pauli_constraint_residual(geo: &Geometry) -> f64 {
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        let om = geo.omega[mu].values();
        for i in 1..4 {
            worst = worst.max(om.commutator(&sigma_frame(i)).scale(0.5).norm());
        }
    }
    worst
}

/// Same as [`pauli_constraint_residual`] restricted to the `e_0` direction.
pub fn pauli_constraint_along_e0(geo: &Geometry) -> f64 {
    let om = geo.omega_frame[0].values();
    (1..4)
        .map(|i| om.commutator(&sigma_frame(i)).scale(0.5).norm())
        .fold(0.0, f64::max)
}

/// Componentwise `ω^b_{μi} − e^b⌟(ω^a_{μ0} e_i e_a e_0)`, maximised over
/// `μ, i, b`, using reciprocal vectors `e^b = η^{bb} e_b`.
pub fn pauli_constraint_components(geo: &Geometry) -> f64 {
    let h = geo.h_values();
    let conn = frame_connection(geo);
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        // ω^b_{μ a} = h^c_μ conn[c][b][a]
        let w = |b: usize, a: usize| (0..4).map(|c| h[c][mu] * conn[c][b][a]).sum::<f64>();
        for i in 1..4 {
            let mut x = Multivector::zero();
            for a in 0..4 {
                x += (Multivector::basis(i) * Multivector::basis(a) * Multivector::basis(0))
                    .scale(w(a, 0));
            }
            for b in 0..4 {
                let rec = Multivector::basis(b).scale(ETA[b]);
                let rhs: f64 = rec.left_contract(&x).c[0];
                worst = worst.max((w(b, i) - rhs).abs());
            }
        }
    }
    worst
}

/// `ω^c_{ab}` with `D_{e_a} e_b = ω^c_{ab} e_c`, indexed `[a][c][b]`.
pub fn frame_connection(geo: &Geometry) -> [[[f64; 4]; 4]; 4] {
    geo.conn.map(|a| a.map(|r| r.map(|j| j.value())))
}

/// `max_{a,b} |ω^c_{ab} e_c − ½ω_{e_a} e_b + ½ e_b ω_{e_a}|` for supplied data.
pub fn gamma_identity_residual_with(
    conn: &[[[f64; 4]; 4]; 4],
    omega_frame: &[Multivector; 4],
) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let mut s = Multivector::zero();
            for c in 0..4 {
                s += Multivector::basis(c).scale(conn[a][c][b]);
            }
            let eb = Multivector::basis(b);
            s -= (omega_frame[a] * eb).scale(0.5);
            s += (eb * omega_frame[a]).scale(0.5);
            worst = worst.max(s.norm());
        }
    }
    worst
}

pub fn gamma_identity_residual(geo: &Geometry) -> f64 {
    gamma_identity_residual_with(&frame_connection(geo), &geo.omega_frame_values())
}

pub mod fermi {
    //! Radial geodesic with a parallel-transported frame, integrated by RK4
    //! in static Schwarzschild coordinates `(t, r, ϑ, φ)`.

    use crate::chart::{Geometry, Spacetime};

    /// State: position, and four transported vectors (index 0 is the velocity).
    #[derive(Clone, Copy, Debug)]
    pub struct TransportState {
        pub x: [f64; 4],
        pub frame: [[f64; 4]; 4],
    }

    fn rhs(m: f64, s: &TransportState) -> TransportState {
        let geo = Geometry::at(&Spacetime::Schwarzschild { m }, s.x).expect("outside horizon");
        let gam = geo.christoffels();
        let u = s.frame[0];
        let mut d = TransportState {
            x: u,
            frame: [[0.0; 4]; 4],
        };
        for a in 0..4 {
            for mu in 0..4 {
                let mut acc = 0.0;
                for al in 0..4 {
                    for be in 0..4 {
                        acc -= gam[mu][al][be] * u[al] * s.frame[a][be];
                    }
                }
                d.frame[a][mu] = acc;
            }
        }
        d
    }

    fn axpy(s: &TransportState, k: &TransportState, h: f64) -> TransportState {
        let mut o = *s;
        for mu in 0..4 {
            o.x[mu] += h * k.x[mu];
            for a in 0..4 {
                o.frame[a][mu] += h * k.frame[a][mu];
            }
        }
        o
    }

    /// Advances by proper time `tau` in `steps` RK4 steps.
    pub fn integrate(m: f64, start: TransportState, tau: f64, steps: usize) -> TransportState {
        let h = tau / steps as f64;
        let mut s = start;
        for _ in 0..steps {
            let k1 = rhs(m, &s);
            let k2 = rhs(m, &axpy(&s, &k1, h / 2.0));
            let k3 = rhs(m, &axpy(&s, &k2, h / 2.0));
            let k4 = rhs(m, &axpy(&s, &k3, h));
            for mu in 0..4 {
                s.x[mu] += h / 6.0 * (k1.x[mu] + 2.0 * k2.x[mu] + 2.0 * k3.x[mu] + k4.x[mu]);
                for a in 0..4 {
                    s.frame[a][mu] += h / 6.0
                        * (k1.frame[a][mu]
                            + 2.0 * k2.frame[a][mu]
                            + 2.0 * k3.frame[a][mu]
                            + k4.frame[a][mu]);
                }
            }
        }
        s
    }

    /// Integrates with `steps` and `2·steps`; returns the finer result and
    /// the largest component change between them.
    pub fn integrate_converged(
        m: f64,
        start: TransportState,
        tau: f64,
        steps: usize,
    ) -> (TransportState, f64) {
        let a = integrate(m, start, tau, steps);
        let b = integrate(m, start, tau, 2 * steps);
        let mut diff: f64 = 0.0;
        for mu in 0..4 {
            diff = diff.max((a.x[mu] - b.x[mu]).abs());
            for k in 0..4 {
                diff = diff.max((a.frame[k][mu] - b.frame[k][mu]).abs());
            }
        }
        (b, diff)
    }
}
