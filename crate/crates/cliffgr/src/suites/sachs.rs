//! Paravector (Sachs) dressing of the field equations, the total covariant
//! derivative of the paravectors and the inertial-frame conditions.

use super::{max_of, Context};
use crate::config::Suite;
use crate::einstein::*;
use crate::multivector::Multivector;
use crate::report::Check;
use crate::spinor_connection::*;

/// Tolerance used to classify a constraint as satisfied.
pub const CONSTRAINT_TOL: f64 = 1e-9;

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng(Suite::Sachs);
    let xs = ctx.points(&mut rng);
    let geos = match ctx.geometries(&xs) {
        Ok(g) => g,
        Err(e) => {
            return vec![Check::failed(
                "sachs.evaluation",
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
                "sachs.evaluation",
                "matter at sample points",
                e,
            )]
        }
    };
    let eins: Vec<EinsteinData> = geos.iter().map(ricci_and_einstein).collect();
    let vacuum = tms
        .iter()
        .all(|t| t.values().iter().flatten().all(|v| v.abs() < 1e-14));
    let tol = if vacuum { 1e-8 } else { 1e-6 };

    let dagger_r = max_of(geos.iter().map(|g| sachs_residual(g, SachsVariant::Dagger)));
    let literal_r = max_of(
        geos.iter()
            .map(|g| sachs_residual(g, SachsVariant::Literal)),
    );

    let mut trace: f64 = 0.0;
    let mut sandwich: f64 = 0.0;
    let mut from_q: f64 = 0.0;
    let mut paravector: f64 = 0.0;
    for g in &geos {
        let q = ParavectorField::new(g);
        trace = trace.max((q.trace_contraction() - Multivector::scalar(-4.0)).norm());
        paravector = paravector.max(q.paravector_residual());
        for rho in 0..4 {
            let om = g.omega[rho].values();
            sandwich = sandwich.max(q.sandwich(&om).norm());
            from_q = from_q.max((q.omega_from_q(g, rho) + dagger(&om)).norm());
        }
    }

    let corrected: Vec<SachsSuite> = (0..geos.len())
        .map(|i| sachs_suite(&geos[i], &eins[i], &tms[i], SachsSign::Corrected))
        .collect();
    let printed =
        max_of((0..geos.len()).map(|i| {
            sachs_suite(&geos[i], &eins[i], &tms[i], SachsSign::Printed).sachs1_residual()
        }));
    let field_eq = max_of(corrected.iter().map(|s| s.sachs1_residual()));
    let sachs5 = max_of(
        corrected
            .iter()
            .zip(&geos)
            .map(|(s, g)| s.sachs5_residual(g)),
    );

    let mut checks = vec![
        Check::below(
            "sachs.trivial_identity",
            "total covariant derivative of q_μ vanishes (ω† on the right)",
            dagger_r,
            1e-8,
        ),
        Check::info(
            "sachs.trivial_identity_literal",
            "same with ω on the right instead of ω†",
            literal_r,
        ),
        Check::below("sachs.trace_contraction", "q^μ q̌_μ = −4", trace, 1e-10),
        Check::below(
            "sachs.sandwich",
            "q^μ ω q̌_μ = 0 for connection bivectors",
            sandwich,
            1e-10,
        ),
        Check::below("sachs.omega_from_q", "−½ q̌_μ ∇_ρ q^μ = −ω_ρ†", from_q, 1e-8),
        Check::below(
            "sachs.paravector",
            "q_μ are scalar plus bivector",
            paravector,
            1e-12,
        ),
        Check::below(
            "sachs.field_equation",
            "R_ρλq^λ + q^λR†_ρλ − Rq_ρ = 2T_ρ",
            field_eq,
            tol,
        ),
        Check::info("sachs.field_equation_printed", "same with +Rq_ρ", printed),
        Check::below(
            "sachs.field_divergence",
            "covariant divergence of 𝔽 equals the current 𝕁",
            sachs5,
            1e-5,
        ),
    ];

    // Grade content of 𝔽_ργ: weakest component over the strongest point.
    let reports: Vec<Vec<FieldType>> = corrected.iter().map(|s| s.type_report()).collect();
    let ncomp = reports.first().map_or(0, |r| r.len());
    let mut weakest = f64::INFINITY;
    for k in 0..ncomp {
        let ft = |f: fn(&FieldType) -> f64| max_of(reports.iter().map(|r| f(&r[k])));
        let (rho, ga) = (reports[0][k].rho, reports[0][k].gamma);
        let bv = ft(|t| t.bivector);
        weakest = weakest.min(bv);
        for (name, v) in [
            ("scalar", ft(|t| t.scalar)),
            ("bivector", bv),
            ("pseudoscalar", ft(|t| t.pseudoscalar)),
            ("odd", ft(|t| t.odd)),
        ] {
            checks.push(Check::info(
                &format!("sachs.field_type_{rho}{ga}_{name}"),
                &format!("largest {name} part of 𝔽_{rho}{ga} over the points"),
                v,
            ));
        }
    }
    if ncomp > 0 {
        checks.push(Check::above(
            "sachs.field_bivector_content",
            "every 𝔽_ργ has a nonzero bivector part somewhere",
            weakest,
            1e-8,
        ));
    }

    // Inertial-frame conditions on e_0.
    let reps: Vec<ConstraintReport> = geos
        .iter()
        .map(|g| inertial_constraint_check(g, CONSTRAINT_TOL))
        .collect();
    let ric00_gap = max_of(reps.iter().zip(&tms).map(|(r, t)| {
        let v = t.values();
        (r.ric_00 - (v[0][0] - 0.5 * t.trace())).abs()
    }));
    let teleparallel = reps.iter().all(|r| r.teleparallel());
    checks.extend([
        Check::below(
            "sachs.constraint_ric00",
            "Ric(e_0,e_0) = T_00 − ½T",
            ric00_gap,
            1e-6,
        ),
        Check::info(
            "sachs.constraint_ric00_value",
            "largest |Ric(e_0,e_0)|",
            max_of(reps.iter().map(|r| r.ric_00.abs())),
        ),
        Check::info(
            "sachs.constraint_ric_e0",
            "largest |Ric(e_0,e_b)|",
            max_of(reps.iter().map(|r| r.ric_e0)),
        ),
        Check::info(
            "sachs.constraint_de0",
            "largest |D_{e_a}e_0|",
            max_of(reps.iter().map(|r| r.de0)),
        ),
        Check::info(
            "sachs.constraint_geodesic",
            "largest |D_{e_0}e_0|",
            max_of(reps.iter().map(|r| r.geodesic)),
        ),
        Check::info(
            "sachs.constraint_fermi",
            "largest |D_{e_0}e_i|",
            max_of(reps.iter().map(|r| r.fermi)),
        ),
        Check::info(
            "sachs.constraint_frame_derivative",
            "largest |D_{e_a}e_b|",
            max_of(reps.iter().map(|r| r.frame_derivative)),
        ),
        Check::info(
            "sachs.constraint_teleparallel",
            "1 when every frame derivative vanishes (flat, teleparallel frame)",
            if teleparallel { 1.0 } else { 0.0 },
        ),
    ]);
    checks
}
