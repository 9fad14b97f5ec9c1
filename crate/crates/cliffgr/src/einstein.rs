//! Einstein's equations in gauge, Maxwell-like, paravector and
//! superpotential form, plus surface mass integrals.
//!
//! Frame objects carry jets so their first derivatives are available:
//! curvature bivectors and everything built algebraically from them are
//! first-order jets, connection forms second-order.
//!
//! Scalar differential forms are stored as `Multivector<Jet>` indexed by
//! coordinate masks (see [`FrameBasis`]).

use crate::chart::{linalg, ChartPoint, Geometry, GeometryError, Tetrad};
use crate::forms::{
    connection_form, exterior_covariant_d, form_hodge, form_hodge_inv, scalar_d, CliffordForm,
    Flavor, FrameBasis,
};
use crate::jet::{Jet, NMONO};
use crate::multivector::{Multivector, ETA};
use crate::spinor_connection::ParavectorField;
use rayon::prelude::*;
use std::f64::consts::PI;
use thiserror::Error;

type Mv = Multivector<Jet>;
type Pairs<T> = [[T; 4]; 4];

#[derive(Debug, Error, PartialEq)]
pub enum EinsteinError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("spacetime '{0}' supplies no energy-momentum tensor")]
    NoMatter(String),
    #[error("mass integral needs an asymptotically Cartesian chart; '{0}' is not")]
    NotAsymptoticallyFlat(String),
}

fn zero_pairs() -> Pairs<Mv> {
    [[Mv::zero(); 4]; 4]
}

/// Directional derivative `e_c(f) = h_c^μ ∂_μ f`.
fn frame_derivative_of(f: &Mv, geo: &Geometry, c: usize) -> Mv {
    let mut acc = Mv::zero();
    for mu in 0..4 {
        acc += f
            .map(|j| j.derivative(mu))
            .scale_by(geo.e[c][mu].with_order(0));
    }
    acc
}

fn dagger_jet(x: &Mv) -> Mv {
    let e0 = Mv::basis(0);
    e0 * x.reverse() * e0
}

/// Frame components `T_ab` with first-order jets.
#[derive(Clone, Debug)]
pub struct EnergyMomentum {
    pub t: Pairs<Jet>,
}

impl EnergyMomentum {
    /// Uses the tetrad's analytic source; derivatives by central differences.
    pub fn from_tetrad(t: &dyn Tetrad, x: ChartPoint) -> Result<Self, EinsteinError> {
        let centre = t
            .energy_momentum(x)
            .ok_or_else(|| EinsteinError::NoMatter(t.name()))?;
        let mut c = [[[0.0; NMONO]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                c[a][b][0] = centre[a][b];
            }
        }
        for v in 0..4 {
            let h = 1e-5 * (1.0 + x[v].abs());
            let mut xp = x;
            let mut xm = x;
            xp[v] += h;
            xm[v] -= h;
            let (p, m) = (
                t.energy_momentum(xp).unwrap(),
                t.energy_momentum(xm).unwrap(),
            );
            for a in 0..4 {
                for b in 0..4 {
                    c[a][b][v + 1] = (p[a][b] - m[a][b]) / (2.0 * h);
                }
            }
        }
        Ok(EnergyMomentum {
            t: c.map(|r| r.map(|co| Jet::from_coeffs(co, 1))),
        })
    }

    /// Matter defined by the geometry itself, `T_ab := G_ab`.
    pub fn from_einstein(ein: &EinsteinData) -> Self {
        EnergyMomentum {
            t: ein.einstein_tensor_jet(),
        }
    }

    pub fn values(&self) -> [[f64; 4]; 4] {
        self.t.map(|r| r.map(|j| j.value()))
    }

    /// `T_a = T_ab e^b`.
    pub fn vectors(&self) -> [Mv; 4] {
        std::array::from_fn(|a| lower_vector(&self.t[a]))
    }

    /// `𝓣^a = T^a_b θ^b` as coordinate 1-forms.
    pub fn one_forms(&self, geo: &Geometry) -> [Mv; 4] {
        std::array::from_fn(|a| frame_one_form(&self.t[a].map(|j| j.scale(ETA[a])), geo))
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|a| ETA[a] * self.t[a][a].value()).sum()
    }

    pub fn symmetry_residual(&self) -> f64 {
        let v = self.values();
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                worst = worst.max((v[a][b] - v[b][a]).abs());
            }
        }
        worst
    }
}

/// `Σ_b X_b e^b` with lower frame components `X_b`.
fn lower_vector(x: &[Jet; 4]) -> Mv {
    let mut v = Mv::zero();
    for b in 0..4 {
        v.c[1 << b] = x[b].scale(ETA[b]);
    }
    v
}

/// `Σ_b X_b θ^b` in coordinate components.
fn frame_one_form(x: &[Jet; 4], geo: &Geometry) -> Mv {
    let mut v = Mv::zero();
    for mu in 0..4 {
        let mut s = Jet::zero();
        for b in 0..4 {
            s += x[b] * geo.h[b][mu];
        }
        v.c[1 << mu] = s;
    }
    v
}

/// Ricci and Einstein data with first-order jets.
#[derive(Clone, Debug)]
pub struct EinsteinData {
    /// Frame curvature bivectors `R_ab`.
    pub curvature: Box<Pairs<Mv>>,
    /// Ricci vectors `R_a = −e^b ⌟ R_ab`.
    pub ricci: [Mv; 4],
    pub scalar: Jet,
    /// `G_a = R_a − ½ R e_a`.
    pub einstein: [Mv; 4],
}

pub fn ricci_and_einstein(geo: &Geometry) -> EinsteinData {
    let e1 = geo.e.map(|r| r.map(|j| j.with_order(1)));
    let mut curvature = Box::new(zero_pairs());
    for a in 0..4 {
        for b in a + 1..4 {
            let mut m = Mv::zero();
            for mu in 0..4 {
                for nu in 0..4 {
                    if mu != nu {
                        m += geo.curv[mu][nu].scale_by(e1[a][mu] * e1[b][nu]);
                    }
                }
            }
            curvature[a][b] = m;
            curvature[b][a] = -m;
        }
    }
    let ricci: [Mv; 4] = std::array::from_fn(|a| {
        let mut s = Mv::zero();
        for b in 0..4 {
            s -= Mv::basis(b).scale(ETA[b]).left_contract(&curvature[a][b]);
        }
        s
    });
    let mut scalar = Jet::zero();
    for a in 0..4 {
        // R = η^ab R_ab, R_ab = (R_a)^b η_bb
        scalar += ricci[a].c[1 << a];
    }
    let einstein = std::array::from_fn(|a| ricci[a] - Mv::basis(a).scale_by(scalar.scale(0.5)));
    EinsteinData {
        curvature,
        ricci,
        scalar,
        einstein,
    }
}

impl EinsteinData {
    /// `Ric_ab` (both indices down).
    pub fn ricci_tensor(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|a| std::array::from_fn(|b| self.ricci[a].c[1 << b].value() * ETA[b]))
    }

    pub fn einstein_tensor_jet(&self) -> Pairs<Jet> {
        std::array::from_fn(|a| std::array::from_fn(|b| self.einstein[a].c[1 << b].scale(ETA[b])))
    }

    pub fn einstein_tensor(&self) -> [[f64; 4]; 4] {
        self.einstein_tensor_jet().map(|r| r.map(|j| j.value()))
    }

    pub fn ricci_scalar(&self) -> f64 {
        self.scalar.value()
    }

    /// Ricci 1-forms `𝓡^a = R^a_b θ^b`.
    pub fn ricci_one_forms(&self, geo: &Geometry) -> [Mv; 4] {
        std::array::from_fn(|a| {
            let row: [Jet; 4] =
                std::array::from_fn(|b| self.ricci[a].c[1 << b].scale(ETA[a] * ETA[b]));
            frame_one_form(&row, geo)
        })
    }

    /// Einstein 1-forms `𝓖^a = 𝓡^a − ½Rθ^a`.
    pub fn einstein_one_forms(&self, geo: &Geometry) -> [Mv; 4] {
        std::array::from_fn(|a| {
            let row: [Jet; 4] =
                std::array::from_fn(|b| self.einstein[a].c[1 << b].scale(ETA[a] * ETA[b]));
            frame_one_form(&row, geo)
        })
    }

    /// Largest `|G_a|` over the frame.
    pub fn einstein_norm(&self) -> f64 {
        self.einstein
            .iter()
            .map(|g| g.values().norm())
            .fold(0.0, f64::max)
    }

    pub fn ricci_norm(&self) -> f64 {
        self.ricci
            .iter()
            .map(|g| g.values().norm())
            .fold(0.0, f64::max)
    }

    /// Vacuum identity residual, max over `a, b` of
    /// `|(e^c⌟R_ac)e_b − (e^c⌟R_bc)e_a|`.
    pub fn vacuum_identity_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let contracted: [Multivector; 4] = self.ricci.map(|r| -r.values());
        for a in 0..4 {
            for b in 0..4 {
                let l =
                    contracted[a] * Multivector::basis(b) - contracted[b] * Multivector::basis(a);
                worst = worst.max(l.norm());
            }
        }
        worst
    }
}

/// How the divergence of curvature bivectors is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurrentVariant {
    /// `∇_μR^μ_β + ½[ω_μ, R^μ_β]`: Levi-Civita transport of both indices.
    Covariant,
    /// `∂_μR^μ_β + [ω_μ, R^μ_β]`, coordinate indices left untransported.
    Literal,
}

/// Raises the first index of a coordinate pair field, `X^ρ_γ = g^{ρα}X_αγ`.
fn raise_first(x: &Pairs<Mv>, geo: &Geometry) -> Box<Pairs<Mv>> {
    let mut out = Box::new(zero_pairs());
    for rho in 0..4 {
        for ga in 0..4 {
            let mut s = Mv::zero();
            for al in 0..4 {
                s += x[al][ga].scale_by(geo.ginv[rho][al]);
            }
            out[rho][ga] = s;
        }
    }
    out
}

/// `D_ρ Y^ρ_γ` for a Clifford-valued mixed coordinate tensor.
fn coordinate_divergence(
    y: &Pairs<Mv>,
    geo: &Geometry,
    variant: CurrentVariant,
) -> [Multivector; 4] {
    let gam = geo.christoffels();
    let om = geo.omega_values();
    let yv: Pairs<Multivector> = y.map(|r| r.map(|m| m.values()));
    std::array::from_fn(|ga| {
        let mut s = Multivector::zero();
        for rho in 0..4 {
            s += y[rho][ga].map(|j| j.derivative(rho)).values();
            match variant {
                CurrentVariant::Covariant => {
                    for lam in 0..4 {
                        s += yv[lam][ga].scale(gam[rho][rho][lam]);
                        s -= yv[rho][lam].scale(gam[lam][rho][ga]);
                    }
                    s += om[rho].commutator(&yv[rho][ga]).scale(0.5);
                }
                CurrentVariant::Literal => {
                    s += om[rho].commutator(&yv[rho][ga]);
                }
            }
        }
        s
    })
}

/// Gauge current `J_β` from the divergence of the curvature bivectors.
pub fn gauge_current(geo: &Geometry, variant: CurrentVariant) -> [Multivector; 4] {
    coordinate_divergence(&raise_first(&geo.curv, geo), geo, variant)
}

/// Gauge current through forms, `𝓙 = −⋆⁻¹ D⋆𝓡` with `𝓡 = ½R_μν dx^μ∧dx^ν`.
pub fn gauge_current_hodge(geo: &Geometry) -> [Multivector; 4] {
    let r = CliffordForm::two_form(Flavor::Tangent, &geo.curv);
    let omega = connection_form(geo, Flavor::Tangent);
    let dstar = exterior_covariant_d(&form_hodge(&r, geo), &omega);
    let j = -form_hodge_inv(&dstar, geo);
    std::array::from_fn(|b| j.component(&[b]))
}

/// Max difference between the direct and the form route.
pub fn gauge_current_route_residual(geo: &Geometry) -> f64 {
    let a = gauge_current(geo, CurrentVariant::Covariant);
    let b = gauge_current_hodge(geo);
    (0..4).map(|k| (a[k] - b[k]).norm()).fold(0.0, f64::max)
}

/// Which derivative acts in the Maxwell-like divergence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurrentFlavor {
    /// Tensor transport of frame indices plus the adjoint action.
    Covariant,
    /// Adjoint action only (extended covariant derivative).
    Extended,
}

/// Maxwell-like field `𝓕_ab`, its source `T_ae_b − e_bT_a` and
/// `F_ab = ½R(e_ae_b − e_be_a)`.
#[derive(Clone, Debug)]
pub struct MaxwellLike {
    pub field: Box<Pairs<Mv>>,
    pub source: Box<Pairs<Mv>>,
    pub scalar_part: Pairs<Multivector>,
}

pub fn maxwell_like(ein: &EinsteinData, tm: &EnergyMomentum) -> MaxwellLike {
    let tv = tm.vectors();
    let mut field = Box::new(zero_pairs());
    let mut source = Box::new(zero_pairs());
    let mut scalar_part = [[Multivector::zero(); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let (ea, eb) = (Mv::basis(a), Mv::basis(b));
            let ebab = ea * eb - eb * ea;
            field[a][b] =
                ein.ricci[a] * eb - eb * ein.ricci[a] - ebab.scale_by(ein.scalar.scale(0.5));
            source[a][b] = tv[a] * eb - eb * tv[a];
            scalar_part[a][b] = ebab.values().scale(0.5 * ein.ricci_scalar());
        }
    }
    MaxwellLike {
        field,
        source,
        scalar_part,
    }
}

/// `D_{e_a} X^a_b` for a frame pair field with lower indices.
pub fn frame_divergence(x: &Pairs<Mv>, geo: &Geometry, flavor: CurrentFlavor) -> [Multivector; 4] {
    let conn = geo.conn.map(|a| a.map(|r| r.map(|j| j.value())));
    let om = geo.omega_frame_values();
    let up: Pairs<Multivector> =
        std::array::from_fn(|a| std::array::from_fn(|b| x[a][b].values().scale(ETA[a])));
    std::array::from_fn(|b| {
        let mut s = Multivector::zero();
        for a in 0..4 {
            s += frame_derivative_of(&x[a][b], geo, a).values().scale(ETA[a]);
            s += om[a].commutator(&up[a][b]).scale(0.5);
            if flavor == CurrentFlavor::Covariant {
                for d in 0..4 {
                    s += up[d][b].scale(conn[a][a][d]);
                    s -= up[a][d].scale(conn[a][d][b]);
                }
            }
        }
        s
    })
}

impl MaxwellLike {
    pub fn field_norm(&self) -> f64 {
        self.field
            .iter()
            .flatten()
            .map(|m| m.values().norm())
            .fold(0.0, f64::max)
    }

    pub fn scalar_part_norm(&self) -> f64 {
        self.scalar_part
            .iter()
            .flatten()
            .map(|m| m.norm())
            .fold(0.0, f64::max)
    }

    /// `max_b |D_{e_a}𝓕^a_b − 𝓙_b|`.
    pub fn residual(&self, geo: &Geometry, flavor: CurrentFlavor) -> f64 {
        let lhs = frame_divergence(&self.field, geo, flavor);
        let rhs = frame_divergence(&self.source, geo, flavor);
        (0..4).map(|b| (lhs[b] - rhs[b]).norm()).fold(0.0, f64::max)
    }

    /// Largest `|D_{e_a}𝓕^a_b|`, to show the residual is not trivially small.
    pub fn divergence_norm(&self, geo: &Geometry, flavor: CurrentFlavor) -> f64 {
        frame_divergence(&self.field, geo, flavor)
            .iter()
            .map(|m| m.norm())
            .fold(0.0, f64::max)
    }
}

/// Paravector dressing of Einstein's equations.
#[derive(Clone, Debug)]
pub struct SachsSuite {
    pub q: ParavectorField,
    /// `T_ρ = T^μ_ρ q_μ`.
    pub t: [Mv; 4],
    pub t_check: [Mv; 4],
    /// `R_ρλq^λ + q^λR†_ρλ ± Rq_ρ`.
    pub lhs: [Mv; 4],
    /// `𝔽_ργ`.
    pub field: Box<Pairs<Mv>>,
    /// `T_ρq̌_γ − q_γŤ_ρ`.
    pub source: Box<Pairs<Mv>>,
}

/// Mixed coordinate components `T^μ_ρ` from frame `T_ab`.
fn coordinate_mixed(tm: &EnergyMomentum, geo: &Geometry) -> Pairs<Jet> {
    let e1 = geo.e.map(|r| r.map(|j| j.with_order(1)));
    let h1 = geo.h.map(|r| r.map(|j| j.with_order(1)));
    std::array::from_fn(|mu| {
        std::array::from_fn(|rho| {
            let mut s = Jet::zero();
            for a in 0..4 {
                for b in 0..4 {
                    s += e1[a][mu] * tm.t[a][b] * h1[b][rho].scale(ETA[a]);
                }
            }
            s
        })
    })
}

/// Sign of the scalar-curvature term in the paravector equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SachsSign {
    /// `R_ρλq^λ + q^λR†_ρλ − Rq_ρ = 2T_ρ`, equivalent to `G = T`.
    Corrected,
    /// `+Rq_ρ` as usually printed; equivalent to `Ric + ½Rg = T`.
    Printed,
}

impl SachsSign {
    fn factor(self) -> f64 {
        match self {
            SachsSign::Corrected => -1.0,
            SachsSign::Printed => 1.0,
        }
    }
}

pub fn sachs_suite(
    geo: &Geometry,
    ein: &EinsteinData,
    tm: &EnergyMomentum,
    sign: SachsSign,
) -> SachsSuite {
    let q = ParavectorField::new(geo);
    let tmix = coordinate_mixed(tm, geo);
    let t: [Mv; 4] = std::array::from_fn(|rho| {
        let mut s = Mv::zero();
        for mu in 0..4 {
            s += q.q[mu].scale_by(tmix[mu][rho]);
        }
        s
    });
    let t_check: [Mv; 4] = std::array::from_fn(|rho| {
        let mut s = Mv::zero();
        for mu in 0..4 {
            s += q.q_check[mu].scale_by(tmix[mu][rho]);
        }
        s
    });
    let r = ein.scalar.scale(sign.factor());
    let lhs: [Mv; 4] = std::array::from_fn(|rho| {
        let mut s = q.q[rho].scale_by(r);
        for lam in 0..4 {
            let c = geo.curv[rho][lam];
            s += c * q.q_upper[lam] + q.q_upper[lam] * dagger_jet(&c);
        }
        s
    });
    let mut field = Box::new(zero_pairs());
    let mut source = Box::new(zero_pairs());
    for rho in 0..4 {
        for ga in 0..4 {
            let mut f = (q.q[rho] * q.q_check[ga] - q.q[ga] * q.q_check[rho]).scale_by(r);
            for lam in 0..4 {
                let c = geo.curv[rho][lam];
                let cd = dagger_jet(&c);
                f += c * q.q_upper[lam] * q.q_check[ga]
                    + q.q[ga] * q.q_check_upper[lam] * c
                    + q.q_upper[lam] * cd * q.q_check[ga]
                    + q.q[ga] * cd * q.q_check_upper[lam];
            }
            field[rho][ga] = f.scale(0.5);
            source[rho][ga] = t[rho] * q.q_check[ga] - q.q[ga] * t_check[rho];
        }
    }
    SachsSuite {
        q,
        t,
        t_check,
        lhs,
        field,
        source,
    }
}

impl SachsSuite {
    /// `max_ρ |R_ρλq^λ + q^λR†_ρλ ± Rq_ρ − 2T_ρ|`.
    pub fn sachs1_residual(&self) -> f64 {
        (0..4)
            .map(|r| (self.lhs[r].values() - self.t[r].values().scale(2.0)).norm())
            .fold(0.0, f64::max)
    }

    /// `max_γ |D_ρ𝔽^ρ_γ − 𝕁_γ|`, both sides differentiated separately.
    pub fn sachs5_residual(&self, geo: &Geometry) -> f64 {
        let lhs = coordinate_divergence(
            &raise_first(&self.field, geo),
            geo,
            CurrentVariant::Covariant,
        );
        let rhs = coordinate_divergence(
            &raise_first(&self.source, geo),
            geo,
            CurrentVariant::Covariant,
        );
        (0..4).map(|g| (lhs[g] - rhs[g]).norm()).fold(0.0, f64::max)
    }

    /// `max_γ |𝕁_γ|`.
    pub fn current_norm(&self, geo: &Geometry) -> f64 {
        coordinate_divergence(
            &raise_first(&self.source, geo),
            geo,
            CurrentVariant::Covariant,
        )
        .iter()
        .map(|m| m.norm())
        .fold(0.0, f64::max)
    }

    /// Grade content of each `𝔽_ργ`, `ρ < γ`.
    pub fn type_report(&self) -> Vec<FieldType> {
        let mut out = Vec::new();
        for rho in 0..4 {
            for ga in rho + 1..4 {
                let f = self.field[rho][ga].values();
                out.push(FieldType {
                    rho,
                    gamma: ga,
                    scalar: f.grade(0).norm(),
                    bivector: f.grade(2).norm(),
                    pseudoscalar: f.grade(4).norm(),
                    odd: f.odd().norm(),
                });
            }
        }
        out
    }

    /// `G^a_ρ` read off `½(R_ρλq^λ + q^λR†_ρλ − Rq_ρ) = G^a_ρ σ_a`, returned as
    /// frame `G_ab`.
    pub fn einstein_from_paravectors(&self, geo: &Geometry) -> [[f64; 4]; 4] {
        let e = geo.e_values();
        let coeff = |m: &Multivector, a: usize| if a == 0 { m.c[0] } else { -m.c[1 | (1 << a)] };
        let half: [Multivector; 4] = self.lhs.map(|m| m.values().scale(0.5));
        std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                let mut s = 0.0;
                for rho in 0..4 {
                    s += coeff(&half[rho], a) * e[b][rho];
                }
                ETA[a] * s
            })
        })
    }
}

/// Grade norms of one Sachs field component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldType {
    pub rho: usize,
    pub gamma: usize,
    pub scalar: f64,
    pub bivector: f64,
    pub pseudoscalar: f64,
    pub odd: f64,
}

/// `G_ab` read off the 3-forms `½𝓡_ab ∧ ⋆(θ^a∧θ^b∧θ^d)` via `𝓖^d = −⋆⁻¹(…)`.
pub fn einstein_from_three_forms(geo: &Geometry) -> [[f64; 4]; 4] {
    let sp = Superpotentials::new(geo);
    let basis = FrameBasis::new(geo);
    std::array::from_fn(|d| {
        let x = basis
            .to_frame(&sp.curvature_three_form(d))
            .hodge_inv()
            .values();
        std::array::from_fn(|b| -ETA[d] * x.c[1 << b])
    })
}

/// Superpotential 2-forms, pseudo-energy 3-forms and their ingredients.
pub struct Superpotentials {
    basis: FrameBasis,
    /// `ω^a_b` as coordinate 1-forms, index `4a + b`.
    omega: Vec<Mv>,
    /// `⋆(θ^a∧θ^b∧θ^c)` as coordinate 1-forms, index `16a + 4b + c`.
    star3: Vec<Mv>,
    pub s: [Mv; 4],
    pub t: [Mv; 4],
}

impl Superpotentials {
    pub fn new(geo: &Geometry) -> Self {
        let basis = FrameBasis::new(geo);
        let omega: Vec<Mv> = (0..16)
            .map(|k| {
                let (a, b) = (k / 4, k % 4);
                let mut v = Mv::zero();
                for mu in 0..4 {
                    let mut s = Jet::zero();
                    for c in 0..4 {
                        s += geo.h[c][mu].with_order(2) * geo.conn[c][a][b];
                    }
                    v.c[1 << mu] = s;
                }
                v
            })
            .collect();
        let star3: Vec<Mv> = (0..64)
            .map(|k| {
                let blade = Multivector::basis(k / 16)
                    .wedge(&Multivector::basis(k / 4 % 4))
                    .wedge(&Multivector::basis(k % 4));
                if blade.is_zero() {
                    Mv::zero()
                } else {
                    basis.to_coordinates(&blade.hodge().lift())
                }
            })
            .collect();
        let mut sp = Superpotentials {
            basis,
            omega,
            star3,
            s: [Mv::zero(); 4],
            t: [Mv::zero(); 4],
        };
        for c in 0..4 {
            let mut s = Mv::zero();
            let mut t = Mv::zero();
            for a in 0..4 {
                for b in 0..4 {
                    let low = sp.om(a, b).scale(ETA[a]);
                    s += low.wedge(sp.st(a, b, c));
                    let mut inner = Mv::zero();
                    for d in 0..4 {
                        inner +=
                            sp.om(c, d).wedge(sp.st(a, b, d)) + sp.om(b, d).wedge(sp.st(a, d, c));
                    }
                    t += low.wedge(&inner);
                }
            }
            sp.s[c] = s.scale(-0.5);
            sp.t[c] = t.scale(0.5);
        }
        sp
    }

    /// `ω^a_b`.
    pub fn om(&self, a: usize, b: usize) -> &Mv {
        &self.omega[4 * a + b]
    }

    fn st(&self, a: usize, b: usize, c: usize) -> &Mv {
        &self.star3[16 * a + 4 * b + c]
    }

    /// Cartan curvature 2-forms `𝓡^a_b = dω^a_b + ω^a_c∧ω^c_b`.
    pub fn curvature_two_form(&self, a: usize, b: usize) -> Mv {
        let mut r = scalar_d(self.om(a, b));
        for c in 0..4 {
            r += self.om(a, c).wedge(self.om(c, b));
        }
        r
    }

    /// `½ 𝓡_ab ∧ ⋆(θ^a∧θ^b∧θ^d)`.
    pub fn curvature_three_form(&self, d: usize) -> Mv {
        let mut acc = Mv::zero();
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    acc += self
                        .curvature_two_form(a, b)
                        .scale(ETA[a])
                        .wedge(self.st(a, b, d));
                }
            }
        }
        acc.scale(0.5)
    }

    /// Hodge dual of a coordinate form.
    pub fn star(&self, f: &Mv) -> Mv {
        self.basis.to_coordinates(&self.basis.to_frame(f).hodge())
    }

    /// Matter 3-form in the sign convention of [`Self::curvature_three_form`]:
    /// `−⋆𝓣`, so that `𝓖 = 𝓣` reads `½𝓡_ab∧⋆(θ^a∧θ^b∧θ^d) = −⋆𝓣^d`.
    pub fn matter_three_form(&self, t: &Mv) -> Mv {
        -self.star(t)
    }

    /// `max_d |½𝓡_ab∧⋆(θ^a∧θ^b∧θ^d) + ⋆𝓖^d|`.
    pub fn hodge_relation_residual(&self, einstein_forms: &[Mv; 4]) -> f64 {
        (0..4)
            .map(|d| {
                (self.curvature_three_form(d) + self.star(&einstein_forms[d]))
                    .values()
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    /// `max_d |E^d + d⋆S^d + ⋆t^d|` with `E^d = ½𝓡_ab∧⋆(θ^a∧θ^b∧θ^d)`.
    pub fn identity_residual(&self) -> f64 {
        (0..4)
            .map(|d| {
                (self.curvature_three_form(d) + scalar_d(&self.s[d]) + self.t[d])
                    .values()
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    /// Same identity with the Hodge dual of `𝓖` in place of `E^d`; fails off vacuum.
    pub fn hodge_identity_residual(&self, einstein_forms: &[Mv; 4]) -> f64 {
        (0..4)
            .map(|d| {
                (self.star(&einstein_forms[d]) + scalar_d(&self.s[d]) + self.t[d])
                    .values()
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    /// `max_a |d(M^a + ⋆t^a)|` with `M^a` from [`Self::matter_three_form`].
    pub fn closedness_residual(&self, matter_forms: &[Mv; 4]) -> f64 {
        (0..4)
            .map(|a| {
                scalar_d(&(self.matter_three_form(&matter_forms[a]) + self.t[a]))
                    .values()
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    /// `max_a |d⋆S^a + M^a + ⋆t^a|`: Einstein's equations in superpotential form.
    pub fn field_equation_residual(&self, matter_forms: &[Mv; 4]) -> f64 {
        (0..4)
            .map(|a| {
                (scalar_d(&self.s[a]) + self.matter_three_form(&matter_forms[a]) + self.t[a])
                    .values()
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn pseudo_energy_values(&self) -> [Multivector; 4] {
        self.t.map(|m| m.values())
    }

    pub fn superpotential_values(&self) -> [Multivector; 4] {
        self.s.map(|m| m.values())
    }
}

/// Einstein 3-forms `½𝓡_ab∧⋆(θ^a∧θ^b∧θ^d)` in coordinate components.
pub fn einstein_three_forms(geo: &Geometry) -> [Multivector; 4] {
    let sp = Superpotentials::new(geo);
    std::array::from_fn(|d| sp.curvature_three_form(d).values())
}

/// Gauge behaviour under a local Lorentz change of tetrad, at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaugeComparison {
    /// `max_a |⋆𝓖'^a − Λ^a_b ⋆𝓖^b|`.
    pub einstein_mismatch: f64,
    /// Relative mismatch of the pseudo-energy forms.
    pub pseudo_energy_relative: f64,
}

pub fn gauge_comparison(
    base: &dyn Tetrad,
    transformed: &dyn Tetrad,
    lambda: [[f64; 4]; 4],
    x: ChartPoint,
) -> Result<GaugeComparison, EinsteinError> {
    let g0 = Geometry::at(base, x)?;
    let g1 = Geometry::at(transformed, x)?;
    let (e0, e1) = (einstein_three_forms(&g0), einstein_three_forms(&g1));
    let (t0, t1) = (
        Superpotentials::new(&g0).pseudo_energy_values(),
        Superpotentials::new(&g1).pseudo_energy_values(),
    );
    let rotate = |v: &[Multivector; 4], a: usize| {
        let mut s = Multivector::zero();
        for b in 0..4 {
            s += v[b].scale(lambda[a][b]);
        }
        s
    };
    let mut em: f64 = 0.0;
    let (mut num, mut den): (f64, f64) = (0.0, 0.0);
    for a in 0..4 {
        em = em.max((e1[a] - rotate(&e0, a)).norm());
        let r = rotate(&t0, a);
        num = num.max((t1[a] - r).norm());
        den = den.max(r.norm().max(t1[a].norm()));
    }
    Ok(GaugeComparison {
        einstein_mismatch: em,
        pseudo_energy_relative: if den > 0.0 { num / den } else { 0.0 },
    })
}

/// Sphere-quadrature settings for [`mass_integral`].
#[derive(Clone, Debug, PartialEq)]
pub struct MassOptions {
    /// Radii in units of the mass parameter scale.
    pub radii: Vec<f64>,
    pub tol: f64,
    pub start_order: usize,
    pub max_order: usize,
    /// Also evaluate `−∮⋆S^0` (needs full geometry at every node).
    pub superpotential: bool,
}

impl Default for MassOptions {
    fn default() -> Self {
        MassOptions {
            radii: vec![1e2, 1e3, 1e4],
            tol: 1e-8,
            start_order: 8,
            max_order: 256,
            superpotential: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MassEstimate {
    pub radii: Vec<f64>,
    pub flux: Vec<f64>,
    pub orders: Vec<usize>,
    pub extrapolated: f64,
    pub superpotential: Vec<f64>,
    pub superpotential_extrapolated: Option<f64>,
}

/// `H^{αβ} = g₁₁g₂₂g₃₃ g^{αβ}` and the integrand `−∂_βH^{αβ} n_α` at one point.
fn flux_density(t: &dyn Tetrad, x: ChartPoint, n: [f64; 3]) -> f64 {
    let h = t.coframe_jet(x);
    let g = crate::chart::metric_from_coframe(&h);
    let ginv = linalg::inverse(&g).expect("degenerate metric on the integration sphere");
    let pre = g[1][1] * g[2][2] * g[3][3];
    let mut s = 0.0;
    for al in 1..4 {
        for be in 0..4 {
            s += (pre * ginv[al][be]).derivative(be).value() * n[al - 1];
        }
    }
    s
}

/// `⋆S^0` pulled back to the sphere, per unit `dθ dφ`.
fn superpotential_density(t: &dyn Tetrad, x: ChartPoint, tx: [f64; 3], px: [f64; 3]) -> f64 {
    let geo = Geometry::at(t, x).expect("integration sphere outside the chart");
    let s0 = Superpotentials::new(&geo).s[0].values();
    let mut v = 0.0;
    for i in 1..4 {
        for j in i + 1..4 {
            let m = (1 << i) | (1 << j);
            v += s0.c[m] * (tx[i - 1] * px[j - 1] - tx[j - 1] * px[i - 1]);
        }
    }
    v
}

fn sphere_integral(order: usize, f: &(dyn Fn(f64, f64) -> f64 + Sync)) -> f64 {
    let gl =
        gauss_quad::legendre::GaussLegendre::new(order.try_into().expect("order must be positive"));
    let nphi = 2 * order;
    let nodes: Vec<(f64, f64, f64)> = gl
        .as_node_weight_pairs()
        .iter()
        .flat_map(|&(u, w)| {
            (0..nphi).map(move |k| {
                (
                    0.5 * PI * (u + 1.0),
                    0.5 * PI * w,
                    2.0 * PI * k as f64 / nphi as f64,
                )
            })
        })
        .collect();
    let dphi = 2.0 * PI / nphi as f64;
    nodes
        .par_iter()
        .map(|&(th, w, ph)| w * dphi * f(th, ph))
        .sum()
}

fn converged(
    start: usize,
    max: usize,
    tol: f64,
    f: &(dyn Fn(f64, f64) -> f64 + Sync),
) -> (f64, usize) {
    let mut n = start;
    let mut prev = sphere_integral(n, f);
    while n < max {
        n *= 2;
        let next = sphere_integral(n, f);
        let done = (next - prev).abs() < tol;
        prev = next;
        if done {
            break;
        }
    }
    (prev, n)
}

/// Linear extrapolation in `1/R` through the two largest radii.
fn extrapolate(radii: &[f64], vals: &[f64]) -> f64 {
    let k = radii.len();
    if k < 2 {
        return vals[0];
    }
    let (r1, r2) = (radii[k - 2], radii[k - 1]);
    (r2 * vals[k - 1] - r1 * vals[k - 2]) / (r2 - r1)
}

/// Surface-integral inertial mass
/// `m_i = −1/(16π) lim ∮ ∂_β(g₁₁g₂₂g₃₃ g^{αβ}) dσ_α` on coordinate spheres
/// centred at the spatial origin at `x⁰ = 0`.
pub fn mass_integral(t: &dyn Tetrad, opts: &MassOptions) -> Result<MassEstimate, EinsteinError> {
    if !t.asymptotically_cartesian() {
        return Err(EinsteinError::NotAsymptoticallyFlat(t.name()));
    }
    let mut est = MassEstimate {
        radii: opts.radii.clone(),
        flux: Vec::new(),
        orders: Vec::new(),
        extrapolated: 0.0,
        superpotential: Vec::new(),
        superpotential_extrapolated: None,
    };
    for &r in &opts.radii {
        let point = |th: f64, ph: f64| {
            let n = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
            ([0.0, r * n[0], r * n[1], r * n[2]], n)
        };
        t.check_domain(point(0.5, 0.5).0)?;
        let flux = |th: f64, ph: f64| {
            let (x, n) = point(th, ph);
            // dσ_α = R² n_α sinθ dθ dφ
            -flux_density(t, x, n) * r * r * th.sin() / (16.0 * PI)
        };
        let (m, n) = converged(opts.start_order, opts.max_order, opts.tol, &flux);
        est.flux.push(m);
        est.orders.push(n);
        if opts.superpotential {
            let sp = |th: f64, ph: f64| {
                let (x, _) = point(th, ph);
                let tx = [
                    r * th.cos() * ph.cos(),
                    r * th.cos() * ph.sin(),
                    -r * th.sin(),
                ];
                let px = [-r * th.sin() * ph.sin(), r * th.sin() * ph.cos(), 0.0];
                -superpotential_density(t, x, tx, px)
            };
            est.superpotential
                .push(converged(opts.start_order, opts.max_order, opts.tol, &sp).0);
        }
    }
    est.extrapolated = extrapolate(&est.radii, &est.flux);
    if opts.superpotential {
        est.superpotential_extrapolated = Some(extrapolate(&est.radii, &est.superpotential));
    }
    Ok(est)
}
