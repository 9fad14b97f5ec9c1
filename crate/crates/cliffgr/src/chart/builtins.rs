//! Built-in spacetimes with closed-form coframes.
//!
//! Each coframe is written once, generically over [`Scalar`]; evaluating it
//! on [`Jet`] coordinates yields exact derivatives.

use super::{uniform, ChartPoint, Coframe, GeometryError, Tetrad};
use crate::jet::{Jet, Scalar};
use rand::RngCore;
use std::collections::BTreeMap;
use std::f64::consts::PI;

const EPS: f64 = 1e-6;

/// Coframes with a closed-form expression.
pub trait AnalyticTetrad: Send + Sync {
    fn label(&self) -> String;
    fn coframe<S: Scalar>(&self, x: [S; 4]) -> Coframe<S>;
    fn domain(&self, x: ChartPoint) -> Result<(), GeometryError>;
    fn draw(&self, rng: &mut dyn RngCore) -> ChartPoint;
    fn matter(&self, _x: ChartPoint) -> Option<[[f64; 4]; 4]> {
        Some([[0.0; 4]; 4])
    }
    fn cartesian_at_infinity(&self) -> bool {
        false
    }
}

macro_rules! analytic_tetrad {
    ($t:ty) => {
        impl Tetrad for $t {
            fn name(&self) -> String {
                self.label()
            }
            fn coframe_f64(&self, x: ChartPoint) -> Coframe<f64> {
                self.coframe(x)
            }
            fn coframe_jet(&self, x: ChartPoint) -> Coframe<Jet> {
                self.coframe(Jet::coordinates(x))
            }
            fn check_domain(&self, x: ChartPoint) -> Result<(), GeometryError> {
                self.domain(x)
            }
            fn sample(&self, rng: &mut dyn RngCore) -> ChartPoint {
                self.draw(rng)
            }
            fn energy_momentum(&self, x: ChartPoint) -> Option<[[f64; 4]; 4]> {
                self.matter(x)
            }
            fn asymptotically_cartesian(&self) -> bool {
                self.cartesian_at_infinity()
            }
        }
    };
}

analytic_tetrad!(Spacetime);
analytic_tetrad!(Transformed);

/// The built-in spacetimes and charts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Spacetime {
    /// `(t, x, y, z)`, `h = 1`.
    MinkowskiCartesian,
    /// `(t, r, ϑ, φ)`, `h = diag(1, 1, r, r sin ϑ)`.
    MinkowskiSpherical,
    /// `(t, r, ϑ, φ)`, static tetrad `diag(√f, 1/√f, r, r sin ϑ)`, `f = 1 − 2m/r`.
    Schwarzschild { m: f64 },
    /// `(t, x, y, z)` isotropic Cartesian, `h = diag(A, ψ², ψ², ψ²)`.
    SchwarzschildIsotropic { m: f64 },
    /// Isotropic chart with the radial deformation `ρ = ρ' + α/ρ'`.
    SchwarzschildDeformed { m: f64, alpha: f64 },
    /// Static coordinates, tetrad of observers falling from rest at infinity.
    PainleveGullstrand { m: f64 },
    /// `(t, x, y, z)` flat dust universe, `a = t^{2/3}`.
    EinsteinDeSitter,
}

fn param(params: &BTreeMap<String, f64>, key: &str, default: f64) -> f64 {
    params.get(key).copied().unwrap_or(default)
}

/// Looks up a built-in spacetime by name. `m` defaults to 1, `alpha` to `m²`.
pub fn builtin(name: &str, params: &BTreeMap<String, f64>) -> Result<Spacetime, GeometryError> {
    let m = param(params, "m", 1.0);
    if !(m > 0.0) && name.starts_with("schwarzschild") {
        return Err(GeometryError::MissingParameter("m > 0".into()));
    }
    Ok(match name {
        "minkowski" | "minkowski_cartesian" => Spacetime::MinkowskiCartesian,
        "minkowski_spherical" => Spacetime::MinkowskiSpherical,
        "schwarzschild" => Spacetime::Schwarzschild { m },
        "schwarzschild_isotropic" => Spacetime::SchwarzschildIsotropic { m },
        "schwarzschild_deformed" => Spacetime::SchwarzschildDeformed {
            m,
            alpha: param(params, "alpha", m * m),
        },
        "schwarzschild_pg" => Spacetime::PainleveGullstrand { m },
        "einstein_de_sitter" => Spacetime::EinsteinDeSitter,
        other => return Err(GeometryError::UnknownSpacetime(other.to_string())),
    })
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 7] = [
    "minkowski",
    "minkowski_spherical",
    "schwarzschild",
    "schwarzschild_isotropic",
    "schwarzschild_deformed",
    "schwarzschild_pg",
    "einstein_de_sitter",
];

fn diag<S: Scalar>(d: [S; 4]) -> Coframe<S> {
    let mut h = [[S::zero(); 4]; 4];
    for i in 0..4 {
        h[i][i] = d[i];
    }
    h
}

fn radius<S: Scalar>(x: &[S; 4]) -> S {
    (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt()
}

fn out_of_domain(x: ChartPoint, why: &str) -> GeometryError {
    GeometryError::OutOfDomain(x, why.to_string())
}

fn check_spherical(x: ChartPoint, rmin: f64) -> Result<(), GeometryError> {
    if !(x[1] > rmin) {
        return Err(out_of_domain(x, &format!("r must exceed {rmin}")));
    }
    if x[2].sin() <= EPS {
        return Err(out_of_domain(x, "sin ϑ too small"));
    }
    Ok(())
}

fn draw_spherical(rng: &mut dyn RngCore, rlo: f64, rhi: f64) -> ChartPoint {
    [
        uniform(rng, -10.0, 10.0),
        uniform(rng, rlo, rhi),
        uniform(rng, 0.2, PI - 0.2),
        uniform(rng, 0.0, 2.0 * PI),
    ]
}

fn draw_cartesian(rng: &mut dyn RngCore, rlo: f64, rhi: f64) -> ChartPoint {
    let r = uniform(rng, rlo, rhi);
    let ct = uniform(rng, -0.95, 0.95);
    let st = (1.0 - ct * ct).sqrt();
    let ph = uniform(rng, 0.0, 2.0 * PI);
    [
        uniform(rng, -10.0, 10.0),
        r * st * ph.cos(),
        r * st * ph.sin(),
        r * ct,
    ]
}

/// `A(ρ)` and `ψ(ρ)²` of the isotropic chart.
fn isotropic<S: Scalar>(rho: S, m: f64) -> (S, S) {
    let u = rho.recip().scale(0.5 * m);
    let psi = S::one() + u;
    let a = (S::one() - u) / psi;
    (a, psi * psi)
}

impl AnalyticTetrad for Spacetime {
    fn label(&self) -> String {
        match self {
            Spacetime::MinkowskiCartesian => "minkowski".into(),
            Spacetime::MinkowskiSpherical => "minkowski_spherical".into(),
            Spacetime::Schwarzschild { m } => format!("schwarzschild(m={m})"),
            Spacetime::SchwarzschildIsotropic { m } => format!("schwarzschild_isotropic(m={m})"),
            Spacetime::SchwarzschildDeformed { m, alpha } => {
                format!("schwarzschild_deformed(m={m},alpha={alpha})")
            }
            Spacetime::PainleveGullstrand { m } => format!("schwarzschild_pg(m={m})"),
            Spacetime::EinsteinDeSitter => "einstein_de_sitter".into(),
        }
    }

    fn coframe<S: Scalar>(&self, x: [S; 4]) -> Coframe<S> {
        match *self {
            Spacetime::MinkowskiCartesian => diag([S::one(); 4]),
            Spacetime::MinkowskiSpherical => {
                let r = x[1];
                diag([S::one(), S::one(), r, r * x[2].sin()])
            }
            Spacetime::Schwarzschild { m } => {
                let r = x[1];
                let sf = (S::one() - r.recip().scale(2.0 * m)).sqrt();
                diag([sf, sf.recip(), r, r * x[2].sin()])
            }
            Spacetime::SchwarzschildIsotropic { m } => {
                let (a, p2) = isotropic(radius(&x), m);
                diag([a, p2, p2, p2])
            }
            Spacetime::SchwarzschildDeformed { m, alpha } => {
                let rp = radius(&x);
                let q = (rp * rp).recip().scale(alpha);
                let rho = rp + rp.recip().scale(alpha);
                let (a, p2) = isotropic(rho, m);
                let mut h = [[S::zero(); 4]; 4];
                h[0][0] = a;
                let n = [x[1] / rp, x[2] / rp, x[3] / rp];
                for i in 0..3 {
                    for j in 0..3 {
                        // ψ² [(1 + α/ρ'²) δ_ij − 2α x'_i x'_j / ρ'^4]
                        let mut v = (n[i] * n[j] * q).scale(-2.0);
                        if i == j {
                            v += S::one() + q;
                        }
                        h[i + 1][j + 1] = p2 * v;
                    }
                }
                h
            }
            Spacetime::PainleveGullstrand { m } => {
                let base = Spacetime::Schwarzschild { m }.coframe(x);
                let beta = -(x[1].recip().scale(2.0 * m)).sqrt().atanh();
                boost_rows(base, 1, beta)
            }
            Spacetime::EinsteinDeSitter => {
                let a = x[0].powf(2.0 / 3.0);
                diag([S::one(), a, a, a])
            }
        }
    }

    fn domain(&self, x: ChartPoint) -> Result<(), GeometryError> {
        if x.iter().any(|v| !v.is_finite()) {
            return Err(out_of_domain(x, "non-finite coordinate"));
        }
        match *self {
            Spacetime::MinkowskiCartesian => Ok(()),
            Spacetime::MinkowskiSpherical => check_spherical(x, 0.0),
            Spacetime::Schwarzschild { m } | Spacetime::PainleveGullstrand { m } => {
                check_spherical(x, 2.0 * m * (1.0 + EPS))
            }
            Spacetime::SchwarzschildIsotropic { m } => {
                let rho = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
                if rho > 0.5 * m * (1.0 + EPS) {
                    Ok(())
                } else {
                    Err(out_of_domain(x, "inside isotropic horizon ρ = m/2"))
                }
            }
            Spacetime::SchwarzschildDeformed { m, alpha } => {
                let rp = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
                if rp <= alpha.sqrt() * (1.0 + EPS) {
                    return Err(out_of_domain(x, "deformation not monotone"));
                }
                if rp + alpha / rp <= 0.5 * m * (1.0 + EPS) {
                    return Err(out_of_domain(x, "inside isotropic horizon"));
                }
                Ok(())
            }
            Spacetime::EinsteinDeSitter => {
                if x[0] > EPS {
                    Ok(())
                } else {
                    Err(out_of_domain(x, "t must be positive"))
                }
            }
        }
    }

    fn draw(&self, rng: &mut dyn RngCore) -> ChartPoint {
        match *self {
            Spacetime::MinkowskiCartesian => std::array::from_fn(|_| uniform(rng, -5.0, 5.0)),
            Spacetime::MinkowskiSpherical => draw_spherical(rng, 0.5, 20.0),
            Spacetime::Schwarzschild { m } | Spacetime::PainleveGullstrand { m } => {
                draw_spherical(rng, 3.0 * m, 50.0 * m)
            }
            Spacetime::SchwarzschildIsotropic { m }
            | Spacetime::SchwarzschildDeformed { m, .. } => draw_cartesian(rng, 2.0 * m, 50.0 * m),
            Spacetime::EinsteinDeSitter => [
                uniform(rng, 0.5, 3.0),
                uniform(rng, -5.0, 5.0),
                uniform(rng, -5.0, 5.0),
                uniform(rng, -5.0, 5.0),
            ],
        }
    }

    fn matter(&self, x: ChartPoint) -> Option<[[f64; 4]; 4]> {
        let mut t = [[0.0; 4]; 4];
        if let Spacetime::EinsteinDeSitter = self {
            t[0][0] = dust_density(x[0]);
        }
        Some(t)
    }

    fn cartesian_at_infinity(&self) -> bool {
        matches!(
            self,
            Spacetime::MinkowskiCartesian
                | Spacetime::SchwarzschildIsotropic { .. }
                | Spacetime::SchwarzschildDeformed { .. }
        )
    }
}

/// Dust density of the flat dust universe in the convention `G_ab = T_ab`.
pub fn dust_density(t: f64) -> f64 {
    4.0 / (3.0 * t * t)
}

/// Applies a boost of rapidity `beta` in the `0–k` plane to coframe rows.
pub fn boost_rows<S: Scalar>(h: Coframe<S>, k: usize, beta: S) -> Coframe<S> {
    let (c, s) = (
        (beta.exp() + (-beta).exp()).scale(0.5),
        (beta.exp() - (-beta).exp()).scale(0.5),
    );
    let mut out = h;
    for mu in 0..4 {
        out[0][mu] = c * h[0][mu] - s * h[k][mu];
        out[k][mu] = c * h[k][mu] - s * h[0][mu];
    }
    out
}

/// Rotates coframe rows `i, j` by `angle`.
pub fn rotate_rows<S: Scalar>(h: Coframe<S>, i: usize, j: usize, angle: S) -> Coframe<S> {
    let (c, s) = (angle.cos(), angle.sin());
    let mut out = h;
    for mu in 0..4 {
        out[i][mu] = c * h[i][mu] + s * h[j][mu];
        out[j][mu] = c * h[j][mu] - s * h[i][mu];
    }
    out
}

/// Position-dependent local Lorentz transformation `h' = Λ(x) h`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LocalLorentz {
    /// Boost in the `0–k` plane, rapidity `β₀ + k·x`.
    Boost {
        axis: usize,
        rapidity: f64,
        gradient: [f64; 4],
    },
    /// Rotation of spatial legs `i, j`, angle `φ₀ + k·x`.
    Rotation {
        plane: (usize, usize),
        angle: f64,
        gradient: [f64; 4],
    },
    /// Radial infall boost `β = −artanh √(2m/r)`, `r = x^1`.
    Infall { m: f64 },
}

impl LocalLorentz {
    pub fn boost(axis: usize, rapidity: f64) -> Self {
        LocalLorentz::Boost {
            axis,
            rapidity,
            gradient: [0.0; 4],
        }
    }

    pub fn rotation(i: usize, j: usize, angle: f64) -> Self {
        LocalLorentz::Rotation {
            plane: (i, j),
            angle,
            gradient: [0.0; 4],
        }
    }

    fn apply<S: Scalar>(&self, h: Coframe<S>, x: &[S; 4]) -> Coframe<S> {
        let lin = |c: f64, k: &[f64; 4]| {
            let mut s = S::from_f64(c);
            for mu in 0..4 {
                if k[mu] != 0.0 {
                    s += x[mu].scale(k[mu]);
                }
            }
            s
        };
        match self {
            LocalLorentz::Boost {
                axis,
                rapidity,
                gradient,
            } => boost_rows(h, *axis, lin(*rapidity, gradient)),
            LocalLorentz::Rotation {
                plane,
                angle,
                gradient,
            } => rotate_rows(h, plane.0, plane.1, lin(*angle, gradient)),
            LocalLorentz::Infall { m } => {
                boost_rows(h, 1, -(x[1].recip().scale(2.0 * m)).sqrt().atanh())
            }
        }
    }

    /// `Λ^a_b` at a point, acting on frame components of covectors.
    pub fn matrix(&self, x: ChartPoint) -> [[f64; 4]; 4] {
        let id: Coframe<f64> =
            std::array::from_fn(|a| std::array::from_fn(|b| if a == b { 1.0 } else { 0.0 }));
        self.apply(id, &x)
    }
}

/// A base spacetime with its tetrad locally Lorentz transformed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transformed {
    pub base: Spacetime,
    pub lorentz: LocalLorentz,
}

impl Transformed {
    pub fn new(base: Spacetime, lorentz: LocalLorentz) -> Self {
        Transformed { base, lorentz }
    }
}

impl AnalyticTetrad for Transformed {
    fn label(&self) -> String {
        format!("{}+{:?}", self.base.label(), self.lorentz)
    }
    fn coframe<S: Scalar>(&self, x: [S; 4]) -> Coframe<S> {
        self.lorentz.apply(self.base.coframe(x), &x)
    }
    fn domain(&self, x: ChartPoint) -> Result<(), GeometryError> {
        self.base.domain(x)
    }
    fn draw(&self, rng: &mut dyn RngCore) -> ChartPoint {
        self.base.draw(rng)
    }
    fn matter(&self, x: ChartPoint) -> Option<[[f64; 4]; 4]> {
        // T_ab transforms with Λ on both indices
        let t = self.base.matter(x)?;
        let l = self.lorentz.matrix(x);
        let eta = crate::multivector::ETA;
        // covector rule Λ acts on θ^a; lowered components use η Λ η
        let lam: [[f64; 4]; 4] =
            std::array::from_fn(|a| std::array::from_fn(|b| eta[a] * l[a][b] * eta[b]));
        Some(std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                let mut s = 0.0;
                for c in 0..4 {
                    for d in 0..4 {
                        s += lam[a][c] * lam[b][d] * t[c][d];
                    }
                }
                s
            })
        }))
    }
    fn cartesian_at_infinity(&self) -> bool {
        self.base.cartesian_at_infinity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::metric_from_coframe;

    #[test]
    fn schwarzschild_gtt() {
        let s = Spacetime::Schwarzschild { m: 1.0 };
        let g = metric_from_coframe(&s.coframe([0.0, 10.0, 1.0, 0.0]));
        assert!((g[0][0] - 0.8).abs() < 1e-15);
        assert!((g[1][1] + 1.0 / 0.8).abs() < 1e-14);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            builtin("kerr", &BTreeMap::new()),
            Err(GeometryError::UnknownSpacetime(_))
        ));
    }

    #[test]
    fn lorentz_preserves_metric() {
        let x = [0.3, 5.0, 1.1, 0.4];
        let base = Spacetime::Schwarzschild { m: 1.0 };
        let g0 = metric_from_coframe(&base.coframe(x));
        for l in [
            LocalLorentz::boost(2, 0.7),
            LocalLorentz::rotation(1, 3, 0.4),
            LocalLorentz::Infall { m: 1.0 },
        ] {
            let g1 = metric_from_coframe(&Transformed::new(base, l).coframe(x));
            assert!(crate::chart::linalg::max_abs_diff(&g0, &g1) < 1e-12);
        }
        let pg = metric_from_coframe(&Spacetime::PainleveGullstrand { m: 1.0 }.coframe(x));
        assert!(crate::chart::linalg::max_abs_diff(&g0, &pg) < 1e-12);
    }

    #[test]
    fn deformed_matches_isotropic_through_the_map() {
        // the deformed chart is the isotropic chart pulled back by x = x'(1 + α/ρ'²)
        let m = 1.0;
        let alpha = 1.0;
        let xp = [0.0, 3.0, -1.0, 2.0];
        let rp = (14.0f64).sqrt();
        let s = 1.0 + alpha / (rp * rp);
        let x = [0.0, xp[1] * s, xp[2] * s, xp[3] * s];
        let gi = metric_from_coframe(&Spacetime::SchwarzschildIsotropic { m }.coframe(x));
        let gd = metric_from_coframe(&Spacetime::SchwarzschildDeformed { m, alpha }.coframe(xp));
        assert!((gi[0][0] - gd[0][0]).abs() < 1e-14);
        // the pulled-back spatial metric is ψ⁴ JᵀJ; compare traces
        let tr_d: f64 = (1..4).map(|i| gd[i][i]).sum();
        let jac = |i: usize, j: usize| {
            let d = if i == j { s } else { 0.0 };
            d - 2.0 * alpha * xp[i] * xp[j] / rp.powi(4)
        };
        let mut tr = 0.0;
        for j in 1..4 {
            for i in 1..4 {
                tr += gi[1][1] * jac(i, j) * jac(i, j);
            }
        }
        assert!((tr - tr_d).abs() < 1e-12);
    }
}
