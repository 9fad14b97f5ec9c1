//! Superpotentials, pseudo energy-momentum, their gauge behaviour and the
//! mass surface integral.

use super::{max_of, reference_point, Context};
use crate::chart::{ChartPoint, FiniteDifference, LocalLorentz, Spacetime, Tetrad, Transformed};
use crate::config::{Provider, Suite};
use crate::einstein::*;
use crate::report::Check;

/// Reference point and frame change for the gauge comparison. The boost
/// has rapidity 0.5 at the probe point and a nonzero gradient.
pub fn gauge_probe(s: &Spacetime, fallback: ChartPoint) -> (LocalLorentz, ChartPoint) {
    if let Spacetime::Schwarzschild { m } = *s {
        return (LocalLorentz::Infall { m }, [0.0, 4.0 * m, 1.0, 0.3]);
    }
    let x = reference_point(s).unwrap_or(fallback);
    let gradient = [0.0, 0.1, 0.05, 0.0];
    let offset: f64 = (0..4).map(|k| gradient[k] * x[k]).sum();
    let lorentz = LocalLorentz::Boost {
        axis: 1,
        rapidity: 0.5 - offset,
        gradient,
    };
    (lorentz, x)
}

/// Asymptotically Cartesian chart used for the mass integral.
pub fn mass_chart(s: &Spacetime) -> Option<Spacetime> {
    match *s {
        Spacetime::Schwarzschild { m } | Spacetime::PainleveGullstrand { m } => {
            Some(Spacetime::SchwarzschildIsotropic { m })
        }
        Spacetime::SchwarzschildIsotropic { .. }
        | Spacetime::SchwarzschildDeformed { .. }
        | Spacetime::MinkowskiCartesian => Some(*s),
        Spacetime::MinkowskiSpherical => Some(Spacetime::MinkowskiCartesian),
        Spacetime::EinsteinDeSitter => None,
    }
}

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng(Suite::Energy);
    let xs = ctx.points(&mut rng);
    let geos = match ctx.geometries(&xs) {
        Ok(g) => g,
        Err(e) => {
            return vec![Check::failed(
                "energy.evaluation",
                "geometry at sample points",
                e,
            )]
        }
    };
    let tms: Result<Vec<EnergyMomentum>, String> = xs
        .iter()
        .map(|&x| EnergyMomentum::from_tetrad(ctx.tetrad, x).map_err(|e| e.to_string()))
        .collect();
    let tms = match tms {
        Ok(t) => t,
        Err(e) => {
            return vec![Check::failed(
                "energy.evaluation",
                "matter at sample points",
                e,
            )]
        }
    };

    let mut identity = Vec::new();
    let mut hodge = Vec::new();
    let mut closed = Vec::new();
    let mut field = Vec::new();
    for (g, t) in geos.iter().zip(&tms) {
        let sp = Superpotentials::new(g);
        let ein = ricci_and_einstein(g);
        let matter = t.one_forms(g);
        identity.push(sp.identity_residual());
        hodge.push(sp.hodge_relation_residual(&ein.einstein_one_forms(g)));
        closed.push(sp.closedness_residual(&matter));
        field.push(sp.field_equation_residual(&matter));
    }
    let mut checks = vec![
        Check::below(
            "energy.superpotential_identity",
            "d⋆S^a = ⋆𝓖^a − ⋆t^a",
            max_of(identity),
            1e-6,
        ),
        Check::below(
            "energy.hodge_relation",
            "curvature 3-forms are −⋆ of the Einstein 1-forms",
            max_of(hodge),
            1e-8,
        ),
        Check::below(
            "energy.closedness",
            "d(⋆𝓣^a + ⋆t^a) = 0",
            max_of(closed),
            1e-5,
        ),
        Check::below(
            "energy.field_equation",
            "d⋆S^a = ⋆𝓣^a − ⋆t^a",
            max_of(field),
            1e-6,
        ),
    ];

    let (lorentz, x) = gauge_probe(
        &ctx.spacetime,
        xs.first().copied().unwrap_or([1.0, 5.0, 1.0, 0.3]),
    );
    match gauge_comparison(
        &ctx.spacetime,
        &Transformed::new(ctx.spacetime, lorentz),
        lorentz.matrix(x),
        x,
    ) {
        Ok(gc) => checks.extend([
            Check::below(
                "energy.einstein_covariance",
                "⋆𝓖^a rotates with the frame change",
                gc.einstein_mismatch,
                1e-8,
            ),
            Check::above(
                "energy.pseudo_energy_gauge_dependence",
                "relative change of ⋆t^a under the frame change",
                gc.pseudo_energy_relative,
                0.1,
            ),
        ]),
        Err(e) => checks.push(Check::failed("energy.gauge", "gauge comparison", e)),
    }

    if let Some(chart) = mass_chart(&ctx.spacetime) {
        let fd = ctx.config.metric.provider == Provider::Fd;
        let opts = MassOptions {
            superpotential: !fd,
            ..MassOptions::default()
        };
        let est = if fd {
            mass_integral(
                &FiniteDifference::with_step(chart, ctx.config.metric.fd_step),
                &opts,
            )
        } else {
            mass_integral(&chart as &dyn Tetrad, &opts)
        };
        checks.extend(mass_checks(&chart, est));
    }
    checks
}

fn mass_checks(chart: &Spacetime, est: Result<MassEstimate, EinsteinError>) -> Vec<Check> {
    let est = match est {
        Ok(e) => e,
        Err(e) => {
            return vec![Check::failed(
                "energy.mass_flux",
                "mass surface integral",
                e,
            )]
        }
    };
    let m = match *chart {
        Spacetime::SchwarzschildIsotropic { m } | Spacetime::SchwarzschildDeformed { m, .. } => m,
        _ => 0.0,
    };
    let mut out = vec![Check::info(
        "energy.mass_flux_value",
        "extrapolated flux mass m_i",
        est.extrapolated,
    )];
    match chart {
        Spacetime::SchwarzschildDeformed { .. } => out.push(Check::above(
            "energy.mass_chart_dependence",
            "|m_i − m| in a non-isotropic asymptotically Cartesian chart",
            (est.extrapolated - m).abs(),
            1e-2,
        )),
        Spacetime::MinkowskiCartesian => out.push(Check::below(
            "energy.mass_flux",
            "|m_i| on flat space",
            est.extrapolated.abs(),
            1e-6,
        )),
        _ => out.push(Check::below(
            "energy.mass_flux",
            "|m_i − m|",
            (est.extrapolated - m).abs(),
            1e-3,
        )),
    }
    if let Some(s) = est.superpotential_extrapolated {
        let target = -8.0 * std::f64::consts::PI * m;
        let gap = if m == 0.0 {
            s.abs()
        } else {
            (s - target).abs() / target.abs()
        };
        out.push(Check::below(
            "energy.superpotential_flux",
            "−∮⋆S^0 = −8πm (relative; absolute when m = 0)",
            gap,
            1e-3,
        ));
    }
    out
}
