//! Torsion, metric compatibility, Bianchi identities and curvature
//! invariants at sample points.

use super::{max_of, Context};
use crate::chart::{ChartPoint, Geometry, Spacetime};
use crate::config::{Provider, Suite};
use crate::forms::{riemann_coordinate, riemann_symmetry_residual};
use crate::report::Check;

type R4 = [[[[f64; 4]; 4]; 4]; 4];

/// `R^ρ_{σμν}` straight from coordinate Christoffel symbols and their derivatives.
pub fn riemann_from_christoffels(geo: &Geometry) -> R4 {
    let g = &geo.christoffel;
    let gv = geo.christoffels();
    let mut r = [[[[0.0; 4]; 4]; 4]; 4];
    for rho in 0..4 {
        for sig in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    let mut s = g[rho][nu][sig].derivative(mu).value()
                        - g[rho][mu][sig].derivative(nu).value();
                    for lam in 0..4 {
                        s += gv[rho][mu][lam] * gv[lam][nu][sig]
                            - gv[rho][nu][lam] * gv[lam][mu][sig];
                    }
                    r[rho][sig][mu][nu] = s;
                }
            }
        }
    }
    r
}

/// `R_{ρσμν}R^{ρσμν}` from the Christoffel route.
pub fn kretschmann_from_christoffels(geo: &Geometry) -> f64 {
    let r = riemann_from_christoffels(geo);
    let g = geo.metric();
    let gi = geo.ginv.map(|row| row.map(|j| j.value()));
    let mut low = [[[[0.0; 4]; 4]; 4]; 4];
    let mut up = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    low[a][b][c][d] = (0..4).map(|e| g[a][e] * r[e][b][c][d]).sum();
                }
            }
        }
    }
    // raise σ, μ, ν on R^ρ_{σμν}
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let mut s = 0.0;
                    for e in 0..4 {
                        for f in 0..4 {
                            for h in 0..4 {
                                s += gi[b][e] * gi[c][f] * gi[d][h] * r[a][e][f][h];
                            }
                        }
                    }
                    up[a][b][c][d] = s;
                }
            }
        }
    }
    let mut k = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    k += low[a][b][c][d] * up[a][b][c][d];
                }
            }
        }
    }
    k
}

fn iso_areal(m: f64, rho: f64) -> f64 {
    rho * (1.0 + m / (2.0 * rho)).powi(2)
}

/// Known Kretschmann scalar of the built-in spacetimes, where one is available.
pub fn kretschmann_closed_form(s: &Spacetime, x: ChartPoint) -> Option<f64> {
    let spatial = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
    let schw = |m: f64, r: f64| 48.0 * m * m / r.powi(6);
    match *s {
        Spacetime::MinkowskiCartesian | Spacetime::MinkowskiSpherical => Some(0.0),
        Spacetime::Schwarzschild { m } | Spacetime::PainleveGullstrand { m } => Some(schw(m, x[1])),
        Spacetime::SchwarzschildIsotropic { m } => Some(schw(m, iso_areal(m, spatial))),
        Spacetime::SchwarzschildDeformed { m, alpha } => {
            Some(schw(m, iso_areal(m, spatial + alpha / spatial)))
        }
        Spacetime::EinsteinDeSitter => Some(80.0 / (27.0 * x[0].powi(4))),
    }
}

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng(Suite::Geometry);
    let pts = ctx.points(&mut rng);
    let geos = match ctx.geometries(&pts) {
        Ok(g) => g,
        Err(e) => {
            return vec![Check::failed(
                "geometry.evaluation",
                "geometry at sample points",
                e,
            )]
        }
    };
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1e-300);

    let torsion = max_of(geos.iter().map(|g| g.torsion_residual()));
    let compat = max_of(geos.iter().map(|g| g.metric_compatibility_residual()));
    let bianchi = max_of(geos.iter().map(|g| g.bianchi_residual()));
    let routes = max_of(geos.iter().map(|g| {
        let (a, b) = (g.christoffels(), g.christoffels_from_frame());
        let mut w: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    w = w.max((a[i][j][k] - b[i][j][k]).abs());
                }
            }
        }
        w
    }));
    let symmetries = max_of(
        geos.iter()
            .map(|g| riemann_symmetry_residual(&riemann_coordinate(g))),
    );
    let kroutes = max_of(geos.iter().map(|g| {
        let (a, b) = (g.kretschmann(), kretschmann_from_christoffels(g));
        if a.abs().max(b.abs()) < 1e-12 {
            (a - b).abs()
        } else {
            rel(a, b)
        }
    }));

    let mut checks = vec![
        Check::below(
            "geometry.torsion",
            "torsion of the tetrad connection vanishes",
            torsion,
            1e-10,
        ),
        Check::below(
            "geometry.metric_compatibility",
            "connection is metric compatible",
            compat,
            1e-10,
        ),
        Check::below(
            "geometry.bianchi_cyclic",
            "cyclic Bianchi identity of the curvature bivectors",
            bianchi,
            1e-8,
        ),
        Check::below(
            "geometry.christoffel_routes",
            "Christoffel symbols from the metric and from the frame connection agree",
            routes,
            1e-10,
        ),
        Check::below(
            "geometry.riemann_symmetries",
            "pair antisymmetry and pair exchange of the Riemann tensor",
            symmetries,
            1e-8,
        ),
        Check::below(
            "geometry.kretschmann_routes",
            "Kretschmann scalar from curvature bivectors vs Christoffel route, relative",
            kroutes,
            1e-6,
        ),
    ];
    let closed: Option<Vec<f64>> = pts
        .iter()
        .map(|&x| kretschmann_closed_form(&ctx.spacetime, x))
        .collect();
    if let Some(exact) = closed {
        let w = max_of(geos.iter().zip(&exact).map(|(g, &k)| {
            let v = kretschmann_from_christoffels(g);
            if k == 0.0 {
                v.abs()
            } else {
                rel(v, k)
            }
        }));
        checks.push(Check::below(
            "geometry.kretschmann_closed_form",
            "Kretschmann scalar against its closed form, relative",
            w,
            1e-6,
        ));
    }
    if ctx.config.metric.provider == Provider::Fd {
        let mut exact = ctx.config.metric.clone();
        exact.provider = Provider::Analytic;
        let dev = exact.tetrad().map_err(|e| e.to_string()).and_then(|t| {
            let mut w: f64 = 0.0;
            for (g, &x) in geos.iter().zip(&pts) {
                let a = Geometry::at(t.as_ref(), x).map_err(|e| e.to_string())?;
                for mu in 0..4 {
                    for nu in 0..4 {
                        w = w.max((g.curvature(mu, nu) - a.curvature(mu, nu)).norm());
                    }
                }
            }
            Ok(w)
        });
        checks.push(match dev {
            Ok(w) => Check::info("geometry.provider_noise", "largest curvature deviation of the finite-difference provider from the analytic one", w),
            Err(e) => Check::failed("geometry.provider_noise", "provider comparison", e),
        });
    }
    checks
}
