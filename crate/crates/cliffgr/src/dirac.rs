//! The Dirac operator on multiform fields and the wave equations it yields.
//!
//! A multiform field is a `Multivector<Jet>` whose components are taken on
//! the orthonormal coframe blades `θ^J`. Covariant derivatives act through
//! the lowered connection bivectors, `D_{e_a}A = ∂_{e_a}A + ½[ω_a, A]`.

use crate::chart::Geometry;
use crate::einstein::{EinsteinData, EnergyMomentum};
use crate::forms::{scalar_d, FrameBasis};
use crate::jet::{Jet, NMONO};
use crate::multivector::{grade_of, Multivector, ETA};
use rand::Rng;

type Mv = Multivector<Jet>;

fn theta(a: usize) -> Mv {
    Mv::basis(a)
}

/// `D_{e_r}A`.
pub fn covariant_derivative(a: &Mv, geo: &Geometry, r: usize) -> Mv {
    let mut acc = Mv::zero();
    for mu in 0..4 {
        let d = a.map(|j| j.derivative(mu));
        if !d.is_zero() {
            acc += d.scale_by(geo.e[r][mu]);
        }
    }
    acc + geo.omega_frame[r].flat().commutator(a).scale(0.5)
}

fn derivatives(a: &Mv, geo: &Geometry) -> [Mv; 4] {
    std::array::from_fn(|r| covariant_derivative(a, geo, r))
}

/// `∂A = θ^r D_{e_r}A`.
pub fn dirac(a: &Mv, geo: &Geometry) -> Mv {
    let d = derivatives(a, geo);
    let mut out = Mv::zero();
    for (r, dr) in d.iter().enumerate() {
        out += theta(r) * *dr;
    }
    out
}

/// `dA = θ^r ∧ D_{e_r}A`.
pub fn differential(a: &Mv, geo: &Geometry) -> Mv {
    let d = derivatives(a, geo);
    let mut out = Mv::zero();
    for (r, dr) in d.iter().enumerate() {
        out += theta(r).wedge(dr);
    }
    out
}

/// `δA = −θ^r ⌟ D_{e_r}A`.
pub fn codifferential(a: &Mv, geo: &Geometry) -> Mv {
    let d = derivatives(a, geo);
    let mut out = Mv::zero();
    for (r, dr) in d.iter().enumerate() {
        out -= theta(r).left_contract(dr);
    }
    out
}

/// Exterior derivative through coordinate components, without the connection.
pub fn coordinate_differential(a: &Mv, geo: &Geometry) -> Mv {
    let basis = FrameBasis::new(geo);
    basis.to_frame(&scalar_d(&basis.to_coordinates(a)))
}

/// `δA_p = (−1)^p ⋆⁻¹ d ⋆ A_p`, grade by grade, with the coordinate `d`.
pub fn hodge_codifferential(a: &Mv, geo: &Geometry) -> Mv {
    let mut out = Mv::zero();
    for p in 0..=4 {
        let ap = a.grade(p);
        if ap.is_zero() {
            continue;
        }
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        out += coordinate_differential(&ap.hodge(), geo)
            .hodge_inv()
            .scale(sign);
    }
    out
}

/// `D_aD_bA − ω^c_{ab}D_cA` for all `a, b`, with `D_{e_a}θ^c = −ω^c_{ab}θ^b`.
fn second_derivatives(a: &Mv, geo: &Geometry) -> [[Mv; 4]; 4] {
    let d1 = derivatives(a, geo);
    let conn = geo.conn.map(|x| x.map(|r| r.map(|j| j.value())));
    std::array::from_fn(|p| {
        std::array::from_fn(|q| {
            let mut s = covariant_derivative(&d1[q], geo, p);
            for c in 0..4 {
                if conn[p][c][q] != 0.0 {
                    s -= d1[c].scale(conn[p][c][q]);
                }
            }
            s
        })
    })
}

/// `(∂·∂)A = η^{ab}(D_aD_b − ω^c_{ab}D_c)A`, the covariant D'Alembertian.
pub fn dalembertian(a: &Mv, geo: &Geometry) -> Multivector {
    let s = second_derivatives(a, geo);
    let mut out = Multivector::zero();
    for p in 0..4 {
        out += s[p][p].values().scale(ETA[p]);
    }
    out
}

/// `(∂∧∂)A = θ^a∧θ^b (D_aD_b − ω^c_{ab}D_c)A`, the Ricci operator.
pub fn ricci_operator(a: &Mv, geo: &Geometry) -> Multivector {
    let s = second_derivatives(a, geo);
    let mut out = Multivector::zero();
    for p in 0..4 {
        for q in 0..4 {
            if p != q {
                let blade = Multivector::basis(p).wedge(&Multivector::basis(q));
                out += blade * s[p][q].values();
            }
        }
    }
    out
}

/// `∂(∂A)`.
pub fn dirac_squared(a: &Mv, geo: &Geometry) -> Multivector {
    dirac(&dirac(a, geo), geo).values()
}

/// `−(dδ + δd)A`.
pub fn hodge_laplacian(a: &Mv, geo: &Geometry) -> Multivector {
    let dd = codifferential(&differential(a, geo), geo);
    let dl = differential(&codifferential(a, geo), geo);
    -(dd + dl).values()
}

/// Residuals of the first- and second-order operator identities at one point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct OperatorResiduals {
    /// `|∂A − (dA − δA)|`.
    pub split: f64,
    /// `|d_conn A − d_coord A|`.
    pub d_routes: f64,
    /// `|δ_⌟ A − δ_⋆ A|`.
    pub delta_routes: f64,
    pub dd: f64,
    pub deltadelta: f64,
    /// `|∂²A − (∂·∂ + ∂∧∂)A|`.
    pub square_split: f64,
    /// `|∂²A + (dδ + δd)A|`.
    pub hodge_laplacian: f64,
    /// `|⋆∂²A − ∂²⋆A|`.
    pub star_commutes: f64,
    /// `max_p |δ⋆A_p − (−1)^{p+1}⋆dA_p|`.
    pub delta_star: f64,
    /// Scale of `∂A` for relative comparisons.
    pub scale: f64,
}

pub fn operator_residuals(a: &Mv, geo: &Geometry) -> OperatorResiduals {
    let da = differential(a, geo);
    let dl = codifferential(a, geo);
    let dir = dirac(a, geo);
    let sq = dirac_squared(a, geo);
    let mut delta_star: f64 = 0.0;
    for p in 0..=4 {
        let ap = a.grade(p);
        if ap.is_zero() {
            continue;
        }
        let sign = if p % 2 == 0 { -1.0 } else { 1.0 };
        let lhs = codifferential(&ap.hodge(), geo).values();
        let rhs = differential(&ap, geo).values().hodge().scale(sign);
        delta_star = delta_star.max((lhs - rhs).norm());
    }
    OperatorResiduals {
        split: (dir - (da - dl)).values().norm(),
        d_routes: (da - coordinate_differential(a, geo)).values().norm(),
        delta_routes: (dl - hodge_codifferential(a, geo)).values().norm(),
        dd: coordinate_differential(&coordinate_differential(a, geo), geo)
            .values()
            .norm(),
        deltadelta: hodge_codifferential(&hodge_codifferential(a, geo), geo)
            .values()
            .norm(),
        square_split: (sq - dalembertian(a, geo) - ricci_operator(a, geo)).norm(),
        hodge_laplacian: (sq - hodge_laplacian(a, geo)).norm(),
        star_commutes: (sq.hodge() - dirac_squared(&a.hodge(), geo)).norm(),
        delta_star,
        scale: dir.values().norm(),
    }
}

/// Random multiform with cubic polynomial coefficients around `x0` on the given grades.
pub fn random_multiform<R: Rng + ?Sized>(rng: &mut R, grades: &[usize]) -> Mv {
    let mut m = Mv::zero();
    for k in 0..16 {
        if !grades.contains(&grade_of(k)) {
            continue;
        }
        let mut c = [0.0; NMONO];
        for v in c.iter_mut() {
            *v = rng.gen_range(-1.0..1.0);
        }
        m.c[k] = Jet::from_coeffs(c, crate::jet::MAX_ORDER);
    }
    m
}

/// Coordinate 1-form `A_μ dx^μ` as a multiform.
pub fn from_coordinate_one_form(a: &[Jet; 4], geo: &Geometry) -> Mv {
    let mut m = Mv::zero();
    for b in 0..4 {
        let mut s = Jet::zero();
        for mu in 0..4 {
            s += a[mu] * geo.e[b][mu];
        }
        m.c[1 << b] = s;
    }
    m
}

/// `dx^μ` as a multiform, `e_a^μ θ^a`.
pub fn coordinate_differential_form(mu: usize, geo: &Geometry) -> Mv {
    let mut m = Mv::zero();
    for b in 0..4 {
        m.c[1 << b] = geo.e[b][mu];
    }
    m
}

/// Sign `s` in `(∂∧∂)θ^a = s𝓡^a`.
///
/// With the curvature sign that gives positive energy density under
/// `G = T` the Ricci operator returns `−𝓡^a` (`Standard`). `Printed` flips
/// the sign of Ricci and `T` together, which is the reading in which the
/// wave equations below are usually written.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RicciSign {
    #[default]
    Standard,
    Printed,
}

impl RicciSign {
    pub fn factor(self) -> f64 {
        match self {
            RicciSign::Standard => -1.0,
            RicciSign::Printed => 1.0,
        }
    }
}

fn ricci_one_form(ein: &EinsteinData, a: usize) -> Multivector {
    let mut r = Multivector::zero();
    for b in 0..4 {
        r.c[1 << b] = ein.ricci[a].c[1 << b].value() * ETA[a] * ETA[b];
    }
    r
}

/// `max_a |(∂∧∂)θ^a − s𝓡^a|` and the largest `|𝓡^a|`.
pub fn ricci_operator_residual(geo: &Geometry, ein: &EinsteinData, sign: RicciSign) -> (f64, f64) {
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for a in 0..4 {
        let lhs = ricci_operator(&theta(a), geo);
        let rhs = ricci_one_form(ein, a);
        worst = worst.max((lhs - rhs.scale(sign.factor())).norm());
        scale = scale.max(rhs.norm());
    }
    (worst, scale)
}

/// `−(∂·∂)θ + ∂∧(∂·θ) + ∂⌟(∂∧θ)` for one 1-form field `θ`.
fn wave_lhs(th: &Mv, geo: &Geometry) -> Multivector {
    let div = codifferential(th, geo).scale(-1.0);
    let curl = differential(th, geo);
    -dalembertian(th, geo) + differential(&div, geo).values() - codifferential(&curl, geo).values()
}

/// Tetrad wave report for all four coframe legs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TetradWave {
    /// `max_a |−(∂·∂)θ^a + ∂∧(∂·θ^a) + ∂⌟(∂∧θ^a) − s(𝓣^a − ½Tθ^a)|`.
    pub residual: f64,
    /// `max_a |(∂·∂ + T)θ^a|`.
    pub box_plus_trace: f64,
}

pub fn tetrad_wave(geo: &Geometry, tm: &EnergyMomentum, sign: RicciSign) -> TetradWave {
    let t = tm.values();
    let trace = tm.trace();
    let mut residual: f64 = 0.0;
    let mut bpt: f64 = 0.0;
    for a in 0..4 {
        let th = theta(a);
        let mut src = Multivector::zero();
        for b in 0..4 {
            src.c[1 << b] = ETA[a] * t[a][b] * ETA[b];
        }
        src -= Multivector::basis(a).scale(0.5 * trace);
        let lhs = wave_lhs(&th, geo);
        residual = residual.max((lhs - src.scale(sign.factor())).norm());
        bpt = bpt.max((dalembertian(&th, geo) + Multivector::basis(a).scale(trace)).norm());
    }
    TetradWave {
        residual,
        box_plus_trace: bpt,
    }
}

/// Wave equation for the coordinate differentials `dx^μ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoordinateWave {
    /// Same equation as [`TetradWave::residual`] with `𝓣^μ = T^μ_ν dx^ν`.
    pub residual: f64,
    /// `max_μ |δ dx^μ|`; the reduced form below only applies when this vanishes.
    pub harmonic_defect: f64,
    /// `max_μ |□θ^μ + s(½Rθ^μ + 𝓣^μ)|`.
    pub reduced: f64,
}

pub fn coordinate_wave(
    geo: &Geometry,
    tm: &EnergyMomentum,
    ein: &EinsteinData,
    sign: RicciSign,
) -> CoordinateWave {
    let t = tm.values();
    let trace = tm.trace();
    let e = geo.e_values();
    let s = sign.factor();
    let mut out = CoordinateWave {
        residual: 0.0,
        harmonic_defect: 0.0,
        reduced: 0.0,
    };
    for mu in 0..4 {
        let th = coordinate_differential_form(mu, geo);
        // 𝓣^μ = e_a^μ T^a_b θ^b
        let mut tmu = Multivector::zero();
        for b in 0..4 {
            let mut acc = 0.0;
            for a in 0..4 {
                acc += e[a][mu] * ETA[a] * t[a][b];
            }
            tmu.c[1 << b] = acc * ETA[b];
        }
        let thv = th.values();
        let src = (tmu - thv.scale(0.5 * trace)).scale(s);
        out.residual = out.residual.max((wave_lhs(&th, geo) - src).norm());
        out.harmonic_defect = out
            .harmonic_defect
            .max(codifferential(&th, geo).values().norm());
        let red = dalembertian(&th, geo) + (thv.scale(0.5 * ein.ricci_scalar()) + tmu).scale(s);
        out.reduced = out.reduced.max(red.norm());
    }
    out
}

/// Maxwell residuals for a 2-form `F` and current 1-form `J`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxwellResiduals {
    /// `|dF|`.
    pub df: f64,
    /// `|δF + J|`.
    pub delta_f: f64,
    /// `|∂F − J|`.
    pub dirac: f64,
    /// `|d⋆F + ⋆J|` through coordinate components.
    pub dual: f64,
}

pub fn maxwell(f: &Mv, j: &Mv, geo: &Geometry) -> MaxwellResiduals {
    let jv = j.values();
    MaxwellResiduals {
        df: differential(f, geo).values().norm(),
        delta_f: (codifferential(f, geo).values() + jv).norm(),
        dirac: (dirac(f, geo).values() - jv).norm(),
        dual: (coordinate_differential(&f.hodge(), geo).values() + jv.hodge()).norm(),
    }
}

/// Two routes to `∂²A` for a coordinate 1-form `A_μ dx^μ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialWave {
    /// `(∂²A)_α` through the Clifford operator.
    pub clifford: [f64; 4],
    /// `g^{μν}∇_μ∇_νA_α` through Christoffel symbols.
    pub dalembertian: [f64; 4],
    /// `R^ν_α A_ν`.
    pub ricci_term: [f64; 4],
}

impl PotentialWave {
    /// `max_α |(∂²A)_α − □A_α − sR^ν_αA_ν|`.
    pub fn residual(&self, sign: RicciSign) -> f64 {
        let s = sign.factor();
        (0..4)
            .map(|k| (self.clifford[k] - self.dalembertian[k] - s * self.ricci_term[k]).abs())
            .fold(0.0, f64::max)
    }

    /// `max_α |(∂²A)_α − □A_α|`: what the Ricci term contributes.
    pub fn mismatch(&self) -> f64 {
        (0..4)
            .map(|k| (self.clifford[k] - self.dalembertian[k]).abs())
            .fold(0.0, f64::max)
    }
}

pub fn potential_wave(a: &[Jet; 4], geo: &Geometry, ein: &EinsteinData) -> PotentialWave {
    let m = from_coordinate_one_form(a, geo);
    let sq = dirac_squared(&m, geo);
    let h = geo.h_values();
    let clifford: [f64; 4] =
        std::array::from_fn(|al| (0..4).map(|b| sq.c[1 << b] * h[b][al]).sum());

    let gam = &geo.christoffel;
    // ∇_νA_α as jets
    let na: [[Jet; 4]; 4] = std::array::from_fn(|nu| {
        std::array::from_fn(|al| {
            let mut s = a[al].derivative(nu);
            for lam in 0..4 {
                s -= gam[lam][nu][al] * a[lam];
            }
            s
        })
    });
    let gv = geo.christoffels();
    let ginv = geo.ginv.map(|r| r.map(|j| j.value()));
    let dalembertian: [f64; 4] = std::array::from_fn(|al| {
        let mut s = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                if ginv[mu][nu] == 0.0 {
                    continue;
                }
                let mut t = na[nu][al].derivative(mu).value();
                for lam in 0..4 {
                    t -= gv[lam][mu][nu] * na[lam][al].value()
                        + gv[lam][mu][al] * na[nu][lam].value();
                }
                s += ginv[mu][nu] * t;
            }
        }
        s
    });
    let ric = ein.ricci_tensor();
    let ricc: [[f64; 4]; 4] = std::array::from_fn(|be| {
        std::array::from_fn(|al| {
            let mut s = 0.0;
            for x in 0..4 {
                for y in 0..4 {
                    s += h[x][be] * h[y][al] * ric[x][y];
                }
            }
            s
        })
    });
    let av = a.map(|j| j.value());
    let ricci_term: [f64; 4] = std::array::from_fn(|al| {
        let mut s = 0.0;
        for nu in 0..4 {
            for be in 0..4 {
                s += ginv[nu][be] * ricc[be][al] * av[nu];
            }
        }
        s
    });
    PotentialWave {
        clifford,
        dalembertian,
        ricci_term,
    }
}
