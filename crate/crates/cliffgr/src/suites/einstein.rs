//! Field equations in their several dressings, vacuum claims and the
//! gauge current of the curvature bivectors.

use super::{max_of, Context};
use crate::chart::{Geometry, Spacetime};
use crate::config::{Frame, Suite};
use crate::einstein::*;
use crate::report::Check;

fn tensor_gap(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> f64 {
    let mut w: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            w = w.max((a[i][j] - b[i][j]).abs());
        }
    }
    w
}

/// `G_ab` of a dust-filled flat FRW universe in its comoving frame, from the
/// Friedmann equation `3H² = ρ` with `a ∝ t^{2/3}`.
pub fn dust_oracle(t: f64) -> [[f64; 4]; 4] {
    let hubble = 2.0 / (3.0 * t);
    let mut g = [[0.0; 4]; 4];
    g[0][0] = 3.0 * hubble * hubble;
    g
}

struct Point {
    geo: Geometry,
    ein: EinsteinData,
    tm: EnergyMomentum,
}

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng(Suite::Einstein);
    let pts_x = ctx.points(&mut rng);
    let pts: Result<Vec<Point>, String> = pts_x
        .iter()
        .map(|&x| {
            let geo = Geometry::at(ctx.tetrad, x).map_err(|e| e.to_string())?;
            let tm = EnergyMomentum::from_tetrad(ctx.tetrad, x).map_err(|e| e.to_string())?;
            let ein = ricci_and_einstein(&geo);
            Ok(Point { geo, ein, tm })
        })
        .collect();
    let pts = match pts {
        Ok(p) => p,
        Err(e) => {
            return vec![Check::failed(
                "einstein.evaluation",
                "geometry and matter at sample points",
                e,
            )]
        }
    };
    let vacuum = pts
        .iter()
        .all(|p| p.tm.values().iter().flatten().all(|v| v.abs() < 1e-14));
    let tol = if vacuum { 1e-8 } else { 1e-6 };

    let field = max_of(
        pts.iter()
            .map(|p| tensor_gap(&p.ein.einstein_tensor(), &p.tm.values())),
    );
    let sachs: Vec<SachsSuite> = pts
        .iter()
        .map(|p| sachs_suite(&p.geo, &p.ein, &p.tm, SachsSign::Corrected))
        .collect();
    let three = max_of(
        pts.iter()
            .map(|p| tensor_gap(&einstein_from_three_forms(&p.geo), &p.ein.einstein_tensor())),
    );
    let para = max_of(pts.iter().zip(&sachs).map(|(p, s)| {
        tensor_gap(
            &s.einstein_from_paravectors(&p.geo),
            &p.ein.einstein_tensor(),
        )
    }));
    let ml: Vec<MaxwellLike> = pts.iter().map(|p| maxwell_like(&p.ein, &p.tm)).collect();
    let ml_eq = max_of(
        pts.iter()
            .zip(&ml)
            .map(|(p, m)| m.residual(&p.geo, CurrentFlavor::Covariant)),
    );
    let current_routes = max_of(pts.iter().map(|p| gauge_current_route_residual(&p.geo)));
    let literal = max_of(pts.iter().map(|p| {
        gauge_current(&p.geo, CurrentVariant::Literal)
            .iter()
            .map(|m| m.norm())
            .fold(0.0, f64::max)
    }));
    let symmetric = max_of(pts.iter().map(|p| p.tm.symmetry_residual()));

    let mut checks = vec![
        Check::below(
            "einstein.field_equation",
            "G_ab = T_ab in the frame",
            field,
            tol,
        ),
        Check::below(
            "einstein.three_form_route",
            "G_ab read off the curvature 3-forms agrees with the direct route",
            three,
            1e-6,
        ),
        Check::below(
            "einstein.paravector_route",
            "G_ab read off the paravector equation agrees with the direct route",
            para,
            1e-6,
        ),
        Check::below(
            "einstein.maxwell_like_equation",
            "D_{e_a}𝓕^a_b = 𝓙_b",
            ml_eq,
            tol,
        ),
        Check::below(
            "einstein.gauge_current_routes",
            "divergence of curvature bivectors equals −⋆⁻¹D⋆𝓡",
            current_routes,
            1e-8,
        ),
        Check::info(
            "einstein.gauge_current_literal",
            "largest component of the untransported divergence ∂_μR^μ_β + [ω_μ, R^μ_β]",
            literal,
        ),
        Check::below("einstein.source_symmetry", "T_ab = T_ba", symmetric, 1e-12),
    ];
    if vacuum {
        let g = max_of(pts.iter().map(|p| p.ein.einstein_norm()));
        let r = max_of(pts.iter().map(|p| p.ein.ricci_norm()));
        let id = max_of(pts.iter().map(|p| p.ein.vacuum_identity_residual()));
        let f = max_of(ml.iter().map(|m| m.field_norm()));
        let fs = max_of(ml.iter().map(|m| m.scalar_part_norm()));
        let sf = max_of(sachs.iter().map(|s| {
            s.field
                .iter()
                .flatten()
                .map(|m| m.values().norm())
                .fold(0.0, f64::max)
        }));
        let gc = max_of(pts.iter().map(|p| {
            gauge_current(&p.geo, CurrentVariant::Covariant)
                .iter()
                .map(|m| m.norm())
                .fold(0.0, f64::max)
        }));
        checks.extend([
            Check::below(
                "einstein.vacuum_einstein",
                "Einstein vectors G^a vanish",
                g,
                1e-8,
            ),
            Check::below("einstein.vacuum_ricci", "Ricci 1-forms 𝓡^a vanish", r, 1e-8),
            Check::below(
                "einstein.vacuum_identity",
                "(e^c⌟R_ac)e_b − (e^c⌟R_bc)e_a vanishes",
                id,
                1e-8,
            ),
            Check::below(
                "einstein.vacuum_maxwell_field",
                "Maxwell-like field 𝓕_ab vanishes",
                f,
                1e-8,
            ),
            Check::below(
                "einstein.vacuum_scalar_field",
                "F_ab = ½R(e_ae_b − e_be_a) vanishes",
                fs,
                1e-8,
            ),
            Check::below(
                "einstein.vacuum_sachs_field",
                "paravector field 𝔽_ργ vanishes",
                sf,
                1e-8,
            ),
            Check::below(
                "einstein.vacuum_gauge_current",
                "gauge current of the curvature bivectors vanishes",
                gc,
                1e-8,
            ),
        ]);
    }
    if ctx.spacetime == Spacetime::EinsteinDeSitter && ctx.config.metric.frame == Frame::Static {
        let w = max_of(
            pts.iter()
                .zip(&pts_x)
                .map(|(p, x)| tensor_gap(&p.ein.einstein_tensor(), &dust_oracle(x[0]))),
        );
        checks.push(Check::below(
            "einstein.dust_oracle",
            "G_ab matches 3H² dust in the comoving frame",
            w,
            1e-6,
        ));
    }
    checks
}
