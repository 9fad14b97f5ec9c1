//! Charts, tetrads and the Levi-Civita geometry they induce.
//!
//! A [`Tetrad`] supplies the coframe `h^a_μ(x)` (rows: frame index `a`,
//! columns: coordinate index `μ`) both as plain values and as Taylor jets
//! around a base point. [`Geometry::at`] turns the jet into metric,
//! Christoffel symbols, frame connection coefficients, connection bivectors
//! and curvature bivectors, all carried as jets so that one further layer of
//! derivatives stays available.

pub mod builtins;
pub mod kinematics;
pub mod linalg;
pub mod provider;

use crate::jet::{Jet, Scalar};
use crate::multivector::{Multivector, ETA};
use rand::RngCore;

pub use builtins::{builtin, LocalLorentz, Spacetime, Transformed};
pub use kinematics::{frame_kinematics, frame_kinematics_of, FrameKinematics};
pub use provider::FiniteDifference;

/// Coordinates `x^0..x^3` in geometric units.
pub type ChartPoint = [f64; 4];
/// `h[a][μ]`.
pub type Coframe<S> = [[S; 4]; 4];

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum GeometryError {
    #[error("point {0:?} outside chart domain: {1}")]
    OutOfDomain(ChartPoint, String),
    #[error("degenerate metric at {0:?}")]
    DegenerateMetric(ChartPoint),
    #[error("vector field is not unit timelike (g(Z,Z) = {0})")]
    NotTimelike(f64),
    #[error("unknown spacetime '{0}'")]
    UnknownSpacetime(String),
    #[error("missing parameter '{0}'")]
    MissingParameter(String),
    #[error("chart is not asymptotically Cartesian: {0}")]
    NotAsymptoticallyFlat(String),
}

/// A chart-resident orthonormal coframe with a derivative provider.
pub trait Tetrad: Send + Sync {
    fn name(&self) -> String;
    /// Coframe values at `x`.
    fn coframe_f64(&self, x: ChartPoint) -> Coframe<f64>;
    /// Coframe as third-order jets around `x`.
    fn coframe_jet(&self, x: ChartPoint) -> Coframe<Jet>;
    fn check_domain(&self, x: ChartPoint) -> Result<(), GeometryError>;
    /// Draws a point from a representative compact part of the domain.
    fn sample(&self, rng: &mut dyn RngCore) -> ChartPoint;
    /// Frame components `T_ab` of the matter source, if the spacetime carries one.
    fn energy_momentum(&self, _x: ChartPoint) -> Option<[[f64; 4]; 4]> {
        Some([[0.0; 4]; 4])
    }
    /// True for charts that approach Cartesian Minkowski coordinates at spatial infinity.
    fn asymptotically_cartesian(&self) -> bool {
        false
    }
    /// Label of the derivative provider.
    fn provider(&self) -> &'static str {
        "analytic"
    }
}

impl<T: Tetrad + ?Sized> Tetrad for Box<T> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn coframe_f64(&self, x: ChartPoint) -> Coframe<f64> {
        (**self).coframe_f64(x)
    }
    fn coframe_jet(&self, x: ChartPoint) -> Coframe<Jet> {
        (**self).coframe_jet(x)
    }
    fn check_domain(&self, x: ChartPoint) -> Result<(), GeometryError> {
        (**self).check_domain(x)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> ChartPoint {
        (**self).sample(rng)
    }
    fn energy_momentum(&self, x: ChartPoint) -> Option<[[f64; 4]; 4]> {
        (**self).energy_momentum(x)
    }
    fn asymptotically_cartesian(&self) -> bool {
        (**self).asymptotically_cartesian()
    }
    fn provider(&self) -> &'static str {
        (**self).provider()
    }
}

/// Metric `g_μν = h^a_μ h^b_ν η_ab`.
pub fn metric_from_coframe<S: Scalar>(h: &Coframe<S>) -> [[S; 4]; 4] {
    let mut g = [[S::zero(); 4]; 4];
    for mu in 0..4 {
        for nu in mu..4 {
            let mut s = S::zero();
            for a in 0..4 {
                s += (h[a][mu] * h[a][nu]).scale(ETA[a]);
            }
            g[mu][nu] = s;
            g[nu][mu] = s;
        }
    }
    g
}

/// Metric at a point, with a domain check.
pub fn metric_from_tetrad(t: &dyn Tetrad, x: ChartPoint) -> Result<[[f64; 4]; 4], GeometryError> {
    t.check_domain(x)?;
    Ok(metric_from_coframe(&t.coframe_f64(x)))
}

/// Everything the Levi-Civita connection of a tetrad determines at one point.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub x: ChartPoint,
    /// `h^a_μ`, order 3.
    pub h: Coframe<Jet>,
    /// `h_a^μ` (frame vectors `e_a = h_a^μ ∂_μ`), indexed `[a][μ]`, order 3.
    pub e: Coframe<Jet>,
    pub g: [[Jet; 4]; 4],
    pub ginv: [[Jet; 4]; 4],
    /// Coordinate Christoffels `Γ^α_{νμ}` as `[α][ν][μ]`, order 2.
    pub christoffel: [[[Jet; 4]; 4]; 4],
    /// Frame connection `D_{e_b} e_d = conn[b][c][d] e_c`, order 2.
    pub conn: [[[Jet; 4]; 4]; 4],
    /// Connection bivectors `ω_{e_b} = ½ ω_b^{ce} e_c e_e`, order 2.
    pub omega_frame: [Multivector<Jet>; 4],
    /// Coordinate components `ω_μ = h^b_μ ω_{e_b}`, order 2.
    pub omega: [Multivector<Jet>; 4],
    /// Curvature bivectors `R_μν = ∂_μω_ν − ∂_νω_μ + ½[ω_μ, ω_ν]`, order 1.
    pub curv: [[Multivector<Jet>; 4]; 4],
}

fn zero3() -> [[[Jet; 4]; 4]; 4] {
    [[[Jet::zero(); 4]; 4]; 4]
}

impl Geometry {
    pub fn at(t: &dyn Tetrad, x: ChartPoint) -> Result<Geometry, GeometryError> {
        t.check_domain(x)?;
        Geometry::from_coframe(t.coframe_jet(x), x)
    }

    pub fn from_coframe(h: Coframe<Jet>, x: ChartPoint) -> Result<Geometry, GeometryError> {
        let hinv = linalg::inverse(&h).ok_or(GeometryError::DegenerateMetric(x))?;
        // hinv[μ][a] = h_a^μ
        let e: Coframe<Jet> = std::array::from_fn(|a| std::array::from_fn(|mu| hinv[mu][a]));
        let g = metric_from_coframe(&h);
        let ginv = linalg::inverse(&g).ok_or(GeometryError::DegenerateMetric(x))?;

        let dg: [[[Jet; 4]; 4]; 4] = std::array::from_fn(|s| {
            std::array::from_fn(|m| std::array::from_fn(|n| g[m][n].derivative(s)))
        });
        let mut christoffel = zero3();
        for al in 0..4 {
            for nu in 0..4 {
                for mu in nu..4 {
                    let mut s = Jet::zero();
                    for be in 0..4 {
                        s += ginv[al][be].with_order(2)
                            * (dg[nu][be][mu] + dg[mu][be][nu] - dg[be][nu][mu]);
                    }
                    let s = s.scale(0.5);
                    christoffel[al][nu][mu] = s;
                    christoffel[al][mu][nu] = s;
                }
            }
        }

        // anholonomy C^a_{bc} = −(∂_μh^a_ν − ∂_νh^a_μ) h_b^μ h_c^ν
        let dh: [[[Jet; 4]; 4]; 4] = std::array::from_fn(|a| {
            std::array::from_fn(|mu| std::array::from_fn(|nu| h[a][nu].derivative(mu)))
        });
        let e2: Coframe<Jet> = e.map(|r| r.map(|j| j.with_order(2)));
        let mut anh = zero3();
        for a in 0..4 {
            let curl: [[Jet; 4]; 4] =
                std::array::from_fn(|mu| std::array::from_fn(|nu| dh[a][mu][nu] - dh[a][nu][mu]));
            for b in 0..4 {
                for c in b + 1..4 {
                    let mut s = Jet::zero();
                    for mu in 0..4 {
                        for nu in 0..4 {
                            if mu != nu {
                                s -= curl[mu][nu] * e2[b][mu] * e2[c][nu];
                            }
                        }
                    }
                    anh[a][b][c] = s;
                    anh[a][c][b] = -s;
                }
            }
        }
        // lowered C_{abc} = η_aa C^a_{bc}
        let cl = |a: usize, b: usize, c: usize| anh[a][b][c].scale(ETA[a]);
        // Γ_{abd} = ½(C_{abd} − C_{bda} + C_{dab}); conn[b][a][d] = η^{aa} Γ_{abd}
        let mut conn = zero3();
        for a in 0..4 {
            for b in 0..4 {
                for d in 0..4 {
                    let gam = (cl(a, b, d) - cl(b, d, a) + cl(d, a, b)).scale(0.5);
                    conn[b][a][d] = gam.scale(ETA[a]);
                }
            }
        }
        // ω_b^{ce} = conn[b][c][d] η^{de}
        let omega_frame: [Multivector<Jet>; 4] = std::array::from_fn(|b| {
            let mut m = Multivector::<Jet>::zero();
            for c in 0..4 {
                for ee in c + 1..4 {
                    m.c[(1 << c) | (1 << ee)] = conn[b][c][ee].scale(ETA[ee]);
                }
            }
            m
        });
        let h2: Coframe<Jet> = h.map(|r| r.map(|j| j.with_order(2)));
        let omega: [Multivector<Jet>; 4] = std::array::from_fn(|mu| {
            let mut m = Multivector::<Jet>::zero();
            for b in 0..4 {
                m += omega_frame[b].scale_by(h2[b][mu]);
            }
            m
        });
        let mut curv = [[Multivector::<Jet>::zero(); 4]; 4];
        for mu in 0..4 {
            for nu in mu + 1..4 {
                let d_mu_nu = omega[nu].map(|j| j.derivative(mu));
                let d_nu_mu = omega[mu].map(|j| j.derivative(nu));
                let om_mu = omega[mu].map(|j| j.with_order(1));
                let om_nu = omega[nu].map(|j| j.with_order(1));
                let r = d_mu_nu - d_nu_mu + om_mu.commutator(&om_nu).scale(0.5);
                curv[mu][nu] = r;
                curv[nu][mu] = -r;
            }
        }
        Ok(Geometry {
            x,
            h,
            e,
            g,
            ginv,
            christoffel,
            conn,
            omega_frame,
            omega,
            curv,
        })
    }

    pub fn h_values(&self) -> Coframe<f64> {
        self.h.map(|r| r.map(|j| j.value()))
    }

    pub fn e_values(&self) -> Coframe<f64> {
        self.e.map(|r| r.map(|j| j.value()))
    }

    pub fn metric(&self) -> [[f64; 4]; 4] {
        self.g.map(|r| r.map(|j| j.value()))
    }

    pub fn christoffels(&self) -> [[[f64; 4]; 4]; 4] {
        self.christoffel.map(|a| a.map(|r| r.map(|j| j.value())))
    }

    /// `ω_a^{bc}` (antisymmetric in `b, c`).
    pub fn connection_coeffs(&self) -> [[[f64; 4]; 4]; 4] {
        std::array::from_fn(|a| {
            std::array::from_fn(|b| std::array::from_fn(|c| self.conn[a][b][c].value() * ETA[c]))
        })
    }

    /// `ω_{e_a}` at the point.
    pub fn omega_frame_values(&self) -> [Multivector; 4] {
        self.omega_frame.map(|m| m.values())
    }

    pub fn omega_values(&self) -> [Multivector; 4] {
        self.omega.map(|m| m.values())
    }

    /// Curvature bivector `R_μν` at the point.
    pub fn curvature(&self, mu: usize, nu: usize) -> Multivector {
        self.curv[mu][nu].values()
    }

    /// Frame-index curvature bivector `R_ab = R_μν h_a^μ h_b^ν`.
    pub fn curvature_frame(&self, a: usize, b: usize) -> Multivector {
        let e = self.e_values();
        let mut m = Multivector::zero();
        for mu in 0..4 {
            for nu in 0..4 {
                if mu != nu {
                    m += self.curvature(mu, nu).scale(e[a][mu] * e[b][nu]);
                }
            }
        }
        m
    }

    /// Frame Riemann components `R^{ab}{}_{cd}`.
    pub fn riemann_frame(&self) -> [[[[f64; 4]; 4]; 4]; 4] {
        let mut r = [[[[0.0; 4]; 4]; 4]; 4];
        for c in 0..4 {
            for d in 0..4 {
                if c == d {
                    continue;
                }
                let bv = self.curvature_frame(c, d).bivector_components();
                for a in 0..4 {
                    for b in 0..4 {
                        r[a][b][c][d] = bv[a][b];
                    }
                }
            }
        }
        r
    }

    /// `R_{abcd} R^{abcd}`.
    pub fn kretschmann(&self) -> f64 {
        let r = self.riemann_frame();
        let mut k = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        k += r[a][b][c][d] * r[a][b][c][d] * ETA[a] * ETA[b] * ETA[c] * ETA[d];
                    }
                }
            }
        }
        k
    }

    /// Ricci vectors `R_a = −e^b ⌟ R_ab`.
    pub fn ricci_vectors(&self) -> [Multivector; 4] {
        std::array::from_fn(|a| {
            let mut s = Multivector::zero();
            for b in 0..4 {
                let eb = Multivector::basis(b).scale(ETA[b]);
                s -= eb.left_contract(&self.curvature_frame(a, b));
            }
            s
        })
    }

    /// `Ric_ab`, frame components with both indices down.
    pub fn ricci_tensor(&self) -> [[f64; 4]; 4] {
        let rv = self.ricci_vectors();
        std::array::from_fn(|a| std::array::from_fn(|b| rv[a].vector_components()[b] * ETA[b]))
    }

    pub fn ricci_scalar(&self) -> f64 {
        let r = self.ricci_tensor();
        (0..4).map(|a| ETA[a] * r[a][a]).sum()
    }

    /// Einstein vectors `G_a = R_a − ½ R e_a`.
    pub fn einstein_vectors(&self) -> [Multivector; 4] {
        let rs = self.ricci_scalar();
        let rv = self.ricci_vectors();
        std::array::from_fn(|a| rv[a] - Multivector::basis(a).scale(0.5 * rs))
    }

    pub fn einstein_tensor(&self) -> [[f64; 4]; 4] {
        let gv = self.einstein_vectors();
        std::array::from_fn(|a| std::array::from_fn(|b| gv[a].vector_components()[b] * ETA[b]))
    }

    /// Torsion `Θ^a_{μν} = ∂_μh^a_ν − ∂_νh^a_μ + ω_μ^a_b h^b_ν − ω_ν^a_b h^b_μ`, max norm.
    pub fn torsion_residual(&self) -> f64 {
        let h = self.h_values();
        let mut worst: f64 = 0.0;
        // ω_μ^a_b = h^c_μ conn[c][a][b]
        let om = |mu: usize, a: usize, b: usize| {
            (0..4)
                .map(|c| h[c][mu] * self.conn[c][a][b].value())
                .sum::<f64>()
        };
        for a in 0..4 {
            for mu in 0..4 {
                for nu in mu + 1..4 {
                    let mut t = self.h[a][nu].gradient()[mu] - self.h[a][mu].gradient()[nu];
                    for b in 0..4 {
                        t += om(mu, a, b) * h[b][nu] - om(nu, a, b) * h[b][mu];
                    }
                    worst = worst.max(t.abs());
                }
            }
        }
        worst
    }

    /// `∇_σ g_μν` max norm.
    pub fn metric_compatibility_residual(&self) -> f64 {
        let g = self.metric();
        let gam = self.christoffels();
        let mut worst: f64 = 0.0;
        for s in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    let mut r = self.g[m][n].gradient()[s];
                    for l in 0..4 {
                        r -= gam[l][s][m] * g[l][n] + gam[l][s][n] * g[m][l];
                    }
                    worst = worst.max(r.abs());
                }
            }
        }
        worst
    }

    /// Christoffels rebuilt from the frame connection:
    /// `Γ^α_{νμ} = h_a^α (∂_ν h^a_μ + ω_ν^a_b h^b_μ)`.
    pub fn christoffels_from_frame(&self) -> [[[f64; 4]; 4]; 4] {
        let h = self.h_values();
        let e = self.e_values();
        let mut out = [[[0.0; 4]; 4]; 4];
        for al in 0..4 {
            for nu in 0..4 {
                for mu in 0..4 {
                    let mut s = 0.0;
                    for a in 0..4 {
                        let mut inner = self.h[a][mu].gradient()[nu];
                        for b in 0..4 {
                            let om: f64 =
                                (0..4).map(|c| h[c][nu] * self.conn[c][a][b].value()).sum();
                            inner += om * h[b][mu];
                        }
                        s += e[a][al] * inner;
                    }
                    out[al][nu][mu] = s;
                }
            }
        }
        out
    }

    /// Bianchi cyclic residual `D_ρR_μν + D_μR_νρ + D_νR_ρμ` with
    /// `D_ρ = ∂_ρ + ½[ω_ρ, ·]`, max norm over index triples.
    pub fn bianchi_residual(&self) -> f64 {
        let d = |rho: usize, mu: usize, nu: usize| {
            let r = self.curv[mu][nu];
            let dr = r.map(|j| j.derivative(rho)).values();
            dr + self.omega[rho].values().commutator(&r.values()).scale(0.5)
        };
        let mut worst: f64 = 0.0;
        for rho in 0..4 {
            for mu in rho + 1..4 {
                for nu in mu + 1..4 {
                    let s = d(rho, mu, nu) + d(mu, nu, rho) + d(nu, rho, mu);
                    worst = worst.max(s.norm());
                }
            }
        }
        worst
    }
}

/// Frame components `T_ab` implied by Einstein's equations (`G_ab = T_ab`).
pub fn einstein_defined_matter(geo: &Geometry) -> [[f64; 4]; 4] {
    geo.einstein_tensor()
}

/// Seeded uniform draw in `[lo, hi)`.
pub fn uniform(rng: &mut dyn RngCore, lo: f64, hi: f64) -> f64 {
    use rand::Rng;
    rng.gen_range(lo..hi)
}
