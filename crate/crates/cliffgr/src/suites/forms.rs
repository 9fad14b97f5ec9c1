//! Clifford-valued forms: the graded commutator, exterior covariant
//! derivative, Cartan structure and the form Hodge star.

use super::{curvature_scale, max_of, Context};
use crate::config::Suite;
use crate::forms::*;
use crate::report::Check;

const ALL_GRADES: [usize; 5] = [0, 1, 2, 3, 4];

/// Form-level checks are expensive, so they use at most this many points.
pub const FORM_POINTS: usize = 4;

pub fn run(ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng(Suite::Forms);
    let mut pts = ctx.points(&mut rng);
    pts.truncate(FORM_POINTS);
    let geos = match ctx.geometries(&pts) {
        Ok(g) => g,
        Err(e) => {
            return vec![Check::failed(
                "forms.evaluation",
                "geometry at sample points",
                e,
            )]
        }
    };
    let tol = if curvature_scale(&geos) < 1e-12 {
        1e-10
    } else {
        1e-6
    };

    let mut anti = Vec::new();
    let mut jacobi = Vec::new();
    let mut deriv = Vec::new();
    let mut weighted = Vec::new();
    let mut leibniz = Vec::new();
    let mut dcomm = Vec::new();
    let mut dsq = Vec::new();
    let mut dcubed = Vec::new();
    let mut holonomy = Vec::new();
    let mut torsion_r = Vec::new();
    let mut bianchi = Vec::new();
    let mut cartan = Vec::new();
    let mut relation = Vec::new();
    let mut hodge = Vec::new();
    for g in &geos {
        let om = connection_form(g, Flavor::Tangent);
        let a = CliffordForm::random(&mut rng, 1, Flavor::Tangent, &ALL_GRADES);
        let b = CliffordForm::random(&mut rng, 2, Flavor::Tangent, &ALL_GRADES);
        let c = CliffordForm::random(&mut rng, 1, Flavor::Tangent, &ALL_GRADES);
        let f0 = CliffordForm::random(&mut rng, 0, Flavor::Tangent, &ALL_GRADES);
        let v = CliffordForm::random(&mut rng, 2, Flavor::Tangent, &[1]);

        anti.push(graded_antisymmetry_residual(&a, &b).max(graded_antisymmetry_residual(&a, &c)));
        jacobi.push(graded_jacobi_residual(&a, &b, &c));
        deriv.push(derivation_residual(&om, &a, &b).max(derivation_residual(&om, &f0, &a)));
        weighted.push(weighted_derivation_residual(&om, &a, &b));
        leibniz.push(leibniz_residual(&a, &b, &om).max(leibniz_residual(&f0, &c, &om)));
        dcomm.push(d_commutator_residual(&a, &b));
        dsq.push(
            dsquared_residual(&f0, &om)
                .max(dsquared_residual(&a, &om))
                .max(dsquared_residual(&b, &om)),
        );
        let (l, r) = dcubed_residuals(&a, &om);
        dcubed.push(l.max(r));
        holonomy.push(max_of(
            coordinate_vector_fields(g)
                .iter()
                .map(|v| holonomy_residual(v, g)),
        ));
        torsion_r.push(torsion(g, &om).max_norm());
        bianchi.push(bianchi_form_residual(g));

        let r = curvature_form(&om);
        let two = cartan_two_forms(g);
        let mut w = (&bivectors_from_cartan(&two) - &r).max_norm();
        let back = cartan_from_bivectors(&r);
        for i in 0..4 {
            for j in 0..4 {
                w = w.max((&back[i][j] - &two[i][j]).max_norm());
            }
        }
        let rb = curvature_bivectors(&r);
        for mu in 0..4 {
            for nu in 0..4 {
                w = w.max((rb[mu][nu] - g.curvature(mu, nu)).norm());
            }
        }
        cartan.push(w);
        relation.push(
            cartan_relation_residual(&soldering_form(g, Flavor::Tangent), &om)
                .max(cartan_relation_residual(&v, &om)),
        );
        let mut h: f64 = 0.0;
        for f in [&f0, &a, &b] {
            h = h.max((&form_hodge_inv(&form_hodge(f, g), g) - f).max_norm() / f.max_norm());
        }
        hodge.push(h);
    }

    vec![
        Check::below(
            "forms.graded_antisymmetry",
            "[A,B] = (−1)^{1+pq}[B,A]",
            max_of(anti),
            tol,
        ),
        Check::below(
            "forms.graded_jacobi",
            "graded Jacobi identity of the form commutator",
            max_of(jacobi),
            tol,
        ),
        Check::below(
            "forms.derivation",
            "[ω,·] is a graded derivation of A⊗B with sign (−1)^p",
            max_of(deriv),
            tol,
        ),
        Check::below(
            "forms.derivation_weighted",
            "degree-weighted derivation rule (p+q)[ω,A⊗B] = p[ω,A]⊗B + (−1)^p q A⊗[ω,B]",
            max_of(weighted),
            tol,
        ),
        Check::below(
            "forms.leibniz",
            "D(A⊗B) = DA⊗B + (−1)^p A⊗DB",
            max_of(leibniz),
            tol,
        ),
        Check::below(
            "forms.d_commutator",
            "d[A,B] = [dA,B] + (−1)^p[A,dB]",
            max_of(dcomm),
            tol,
        ),
        Check::below("forms.d_squared", "D²A = ½[𝓡,A]", max_of(dsq), tol),
        Check::below(
            "forms.d_cubed",
            "D³A = ½[𝓡,DA] and [D𝓡,A] = 0",
            max_of(dcubed),
            tol,
        ),
        Check::below(
            "forms.holonomy",
            "[D_ρ,D_λ]v = R_ρλ⌞v on coordinate vector fields",
            max_of(holonomy),
            tol,
        ),
        Check::below(
            "forms.torsion",
            "Dθ = 0 for the soldering form",
            max_of(torsion_r),
            tol,
        ),
        Check::below("forms.bianchi", "D𝓡 = 0", max_of(bianchi), tol),
        Check::below(
            "forms.cartan_routes",
            "curvature from bivectors, Cartan 2-forms and the connection form agree",
            max_of(cartan),
            tol,
        ),
        Check::below(
            "forms.cartan_relation",
            "weighted D and Cartan differential differ by ((p−1)/2)[ω,·]",
            max_of(relation),
            tol,
        ),
        Check::below(
            "forms.hodge_roundtrip",
            "⋆⁻¹⋆A = A on forms, relative",
            max_of(hodge),
            1e-10,
        ),
    ]
}
