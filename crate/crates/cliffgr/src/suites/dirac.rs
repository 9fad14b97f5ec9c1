//! The Dirac operator on multiforms, its square, the wave equations of the
//! tetrad and Maxwell's equations.

use super::{curvature_scale, max_of, reference_point, Context};
use crate::chart::{Geometry, Spacetime};
use crate::config::Suite;
use crate::dirac::*;
use crate::einstein::{ricci_and_einstein, EinsteinData, EnergyMomentum};
use crate::jet::Jet;
use crate::report::Check;

const GRADE_SETS: [&[usize]; 6] = [&[0], &[1], &[2], &[3], &[4], &[0, 1, 2, 3, 4]];

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng(Suite::Dirac);
    let xs = ctx.points(&mut rng);
    let geos = match ctx.geometries(&xs) {
        Ok(g) => g,
        Err(e) => {
            return vec![Check::failed(
                "dirac.evaluation",
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
                "dirac.evaluation",
                "matter at sample points",
                e,
            )]
        }
    };
    let eins: Vec<EinsteinData> = geos.iter().map(ricci_and_einstein).collect();
    let sign = RicciSign::Standard;

    let mut ops: Vec<OperatorResiduals> = Vec::new();
    let mut pot = Vec::new();
    let mut maxwell_r = Vec::new();
    for (g, e) in geos.iter().zip(&eins) {
        for grades in GRADE_SETS {
            ops.push(operator_residuals(&random_multiform(&mut rng, grades), g));
        }
        let m = random_multiform(&mut rng, &[1]);
        let a: [Jet; 4] = std::array::from_fn(|mu| m.c[1 << mu]);
        pot.push(potential_wave(&a, g, e));

        let f = differential(&random_multiform(&mut rng, &[1]), g);
        let j = dirac(&f, g);
        maxwell_r.push(maxwell(&f, &j, g));
    }
    let op = |f: fn(&OperatorResiduals) -> f64| max_of(ops.iter().map(f));
    let ricci = max_of(
        geos.iter()
            .zip(&eins)
            .map(|(g, e)| ricci_operator_residual(g, e, sign).0),
    );
    let waves: Vec<TetradWave> = geos
        .iter()
        .zip(&tms)
        .map(|(g, t)| tetrad_wave(g, t, sign))
        .collect();
    let coord: Vec<CoordinateWave> = (0..geos.len())
        .map(|i| coordinate_wave(&geos[i], &tms[i], &eins[i], sign))
        .collect();

    let mut checks = vec![
        Check::below("dirac.split", "∂A = dA − δA", op(|r| r.split), 1e-10),
        Check::below(
            "dirac.d_routes",
            "d through the connection equals d through coordinates",
            op(|r| r.d_routes),
            1e-8,
        ),
        Check::below(
            "dirac.delta_routes",
            "δ = −θ^r⌟D_r equals (−1)^p⋆⁻¹d⋆",
            op(|r| r.delta_routes),
            1e-8,
        ),
        Check::below("dirac.dd", "d² = 0", op(|r| r.dd), 1e-8),
        Check::below("dirac.deltadelta", "δ² = 0", op(|r| r.deltadelta), 1e-8),
        Check::below(
            "dirac.square_split",
            "∂² = ∂·∂ + ∂∧∂",
            op(|r| r.square_split),
            1e-6,
        ),
        Check::below(
            "dirac.hodge_laplacian",
            "∂² = −(dδ + δd)",
            op(|r| r.hodge_laplacian),
            1e-6,
        ),
        Check::below(
            "dirac.star_commutes",
            "⋆∂² = ∂²⋆",
            op(|r| r.star_commutes),
            1e-6,
        ),
        Check::below(
            "dirac.delta_star",
            "δ⋆A_p = (−1)^{p+1}⋆dA_p",
            op(|r| r.delta_star),
            1e-6,
        ),
        Check::below("dirac.ricci_operator", "(∂∧∂)θ^a = −𝓡^a", ricci, 1e-6),
        Check::below(
            "dirac.tetrad_wave",
            "∂²θ^a = (∂·∂)θ^a − 𝓡^a with 𝓡^a from T",
            max_of(waves.iter().map(|w| w.residual)),
            1e-5,
        ),
        Check::below(
            "dirac.coordinate_wave",
            "wave equation of the coordinate differentials",
            max_of(coord.iter().map(|w| w.residual)),
            1e-6,
        ),
        Check::info(
            "dirac.harmonic_defect",
            "largest |□x^μ|; zero only in harmonic coordinates",
            max_of(coord.iter().map(|w| w.harmonic_defect)),
        ),
        Check::below(
            "dirac.potential_wave",
            "∂²A = □A − Ric(A) for coordinate 1-forms",
            max_of(pot.iter().map(|p| p.residual(sign))),
            1e-6,
        ),
        Check::info(
            "dirac.potential_ricci_term",
            "largest |∂²A − □A|",
            max_of(pot.iter().map(|p| p.mismatch())),
        ),
        Check::below(
            "dirac.maxwell_df",
            "dF = 0 for F = dA",
            max_of(maxwell_r.iter().map(|m| m.df)),
            1e-8,
        ),
        Check::below(
            "dirac.maxwell_delta",
            "δF = −J with J = ∂F",
            max_of(maxwell_r.iter().map(|m| m.delta_f)),
            1e-8,
        ),
        Check::below(
            "dirac.maxwell_dual",
            "d⋆F = −⋆J through coordinate components",
            max_of(maxwell_r.iter().map(|m| m.dual)),
            1e-6,
        ),
    ];

    if curvature_scale(&geos) > 1e-12 {
        let value = match reference_point(&ctx.spacetime) {
            Some(x) => Geometry::at(ctx.tetrad, x)
                .map_err(|e| e.to_string())
                .and_then(|g| {
                    EnergyMomentum::from_tetrad(ctx.tetrad, x)
                        .map(|t| (g, t))
                        .map_err(|e| e.to_string())
                })
                .map(|(g, t)| tetrad_wave(&g, &t, sign).box_plus_trace),
            None => Ok(max_of(waves.iter().map(|w| w.box_plus_trace))),
        };
        // the size of □θ^a depends on chart and frame; the bound is stated for
        // the static frame of the spherical chart and for dust
        let gated = matches!(
            ctx.spacetime,
            Spacetime::Schwarzschild { .. } | Spacetime::EinsteinDeSitter
        );
        let (id, label) = (
            "dirac.box_plus_trace",
            "|(□ + T)θ^a| stays away from zero on curved space",
        );
        checks.push(match value {
            Ok(v) if gated => Check::above(id, label, v, 1e-2),
            Ok(v) => Check::info(id, label, v),
            Err(e) => Check::failed(
                "dirac.box_plus_trace",
                "tetrad wave at the reference point",
                e,
            ),
        });
    }
    checks
}
