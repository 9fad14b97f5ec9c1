//! Acceptance run: one PASS/FAIL line per criterion, with bounds pinned
//! here independently of report tolerances. Clauses marked `known_red` are
//! printed like the others but do not fail the binary.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

use cliffgr::chart::{Geometry, Spacetime};
use cliffgr::config::{Frame, MetricSpec, Suite, SuiteConfig};
use cliffgr::report::VerificationReport;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::{Command, ExitCode};

const SEED: u64 = 20240501;

struct Clause {
    label: String,
    value: f64,
    bound: String,
    ok: bool,
    known_red: bool,
}

fn below(label: &str, value: f64, tol: f64) -> Clause {
    Clause {
        label: label.into(),
        value,
        bound: format!("< {tol:e}"),
        ok: value < tol,
        known_red: false,
    }
}

fn above(label: &str, value: f64, tol: f64) -> Clause {
    Clause {
        label: label.into(),
        value,
        bound: format!("> {tol:e}"),
        ok: value > tol,
        known_red: false,
    }
}

fn within(label: &str, value: f64, lo: f64, hi: f64) -> Clause {
    Clause {
        label: label.into(),
        value,
        bound: format!("in [{lo}, {hi}]"),
        ok: (lo..=hi).contains(&value),
        known_red: false,
    }
}

fn red(mut c: Clause) -> Clause {
    c.known_red = true;
    c
}

fn run(
    name: &str,
    frame: Frame,
    params: &[(&str, f64)],
    suites: &[Suite],
    samples: usize,
) -> VerificationReport {
    let mut metric = MetricSpec::named(name).with_frame(frame);
    for (k, v) in params {
        metric = metric.with_param(k, *v);
    }
    let config = SuiteConfig {
        metric,
        suites: suites.to_vec(),
        seed: SEED,
        samples,
        ..SuiteConfig::default()
    };
    cliffgr::suites::run(&config).expect("valid configuration")
}

fn value(r: &VerificationReport, id: &str) -> f64 {
    r.record(id)
        .unwrap_or_else(|| panic!("no record {id} for {}", r.environment.metric))
        .residual
        .unwrap_or(f64::NAN)
}

fn max_below_prefix(r: &VerificationReport, prefix: &str) -> f64 {
    r.records
        .iter()
        .filter(|x| x.id.starts_with(prefix) && x.comparison == cliffgr::report::Bound::Below)
        .map(|x| x.residual.unwrap_or(f64::NAN))
        .fold(0.0, |m, v| {
            if v.is_nan() || m.is_nan() {
                f64::NAN
            } else {
                m.max(v)
            }
        })
}

fn criterion_01() -> Vec<Clause> {
    let r = run("minkowski", Frame::Static, &[], &[Suite::Algebra], 1000);
    let mut out = vec![below(
        "largest relative residual over every algebra identity",
        max_below_prefix(&r, "algebra."),
        1e-10,
    )];
    for id in [
        "algebra.associativity",
        "algebra.hodge_identities",
        "algebra.vector_split",
        "algebra.hodge_inverse",
    ] {
        out.push(below(id, value(&r, id), 1e-10));
    }
    out
}

fn criterion_02() -> Vec<Clause> {
    let r = run("minkowski", Frame::Static, &[], &[Suite::Spinor], 1000);
    vec![
        below(
            "to_matrix homomorphism on 1000 pairs",
            value(&r, "spinor.matrix_homomorphism"),
            1e-12,
        ),
        below(
            "σ reconstruction from spinor bases",
            value(&r, "spinor.iota_basis"),
            1e-15,
        ),
        below(
            "Kronecker values of the spinor basis",
            value(&r, "spinor.kronecker_units"),
            1e-15,
        ),
    ]
}

/// Christoffel symbols of Schwarzschild (m = 1) written out by hand.
fn gamma(r: f64, th: f64) -> [[[f64; 4]; 4]; 4] {
    let m = 1.0;
    let f = 1.0 - 2.0 * m / r;
    let mut g = [[[0.0; 4]; 4]; 4];
    let mut set = |a: usize, b: usize, c: usize, v: f64| {
        g[a][b][c] = v;
        g[a][c][b] = v;
    };
    set(0, 0, 1, m / (r * r * f));
    set(1, 0, 0, m * f / (r * r));
    set(1, 1, 1, -m / (r * r * f));
    set(1, 2, 2, -r * f);
    set(1, 3, 3, -r * f * th.sin().powi(2));
    set(2, 1, 2, 1.0 / r);
    set(2, 3, 3, -th.sin() * th.cos());
    set(3, 1, 3, 1.0 / r);
    set(3, 2, 3, th.cos() / th.sin());
    g
}

/// Kretschmann scalar from the hand-written Christoffels, differentiated
/// with five-point central differences in `r` and `ϑ`.
fn kretschmann_oracle(r: f64, th: f64) -> f64 {
    let h = 2e-4;
    let dgam = |mu: usize| -> [[[f64; 4]; 4]; 4] {
        let (step, at): (f64, Box<dyn Fn(f64) -> [[[f64; 4]; 4]; 4]>) = match mu {
            1 => (h * r, Box::new(|s| gamma(r + s, th))),
            2 => (h, Box::new(|s| gamma(r, th + s))),
            _ => return [[[0.0; 4]; 4]; 4],
        };
        let (p1, m1, p2, m2) = (at(step), at(-step), at(2.0 * step), at(-2.0 * step));
        std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                std::array::from_fn(|c| {
                    (8.0 * (p1[a][b][c] - m1[a][b][c]) - (p2[a][b][c] - m2[a][b][c]))
                        / (12.0 * step)
                })
            })
        })
    };
    let d: [[[[f64; 4]; 4]; 4]; 4] = std::array::from_fn(dgam);
    let gm = gamma(r, th);
    let f = 1.0 - 2.0 / r;
    let g = [f, -1.0 / f, -r * r, -(r * th.sin()).powi(2)];
    let mut k = 0.0;
    for rho in 0..4 {
        for sig in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    // R^ρ_{σμν} = ∂_μΓ^ρ_{νσ} − ∂_νΓ^ρ_{μσ} + Γ^ρ_{μλ}Γ^λ_{νσ} − Γ^ρ_{νλ}Γ^λ_{μσ}
                    let mut v = d[mu][rho][nu][sig] - d[nu][rho][mu][sig];
                    for lam in 0..4 {
                        v += gm[rho][mu][lam] * gm[lam][nu][sig]
                            - gm[rho][nu][lam] * gm[lam][mu][sig];
                    }
                    k += v * v * g[rho] / (g[sig] * g[mu] * g[nu]);
                }
            }
        }
    }
    k
}

fn criterion_03() -> Vec<Clause> {
    let r = run(
        "schwarzschild",
        Frame::Static,
        &[("m", 1.0)],
        &[Suite::Geometry],
        100,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let s = Spacetime::Schwarzschild { m: 1.0 };
    let (mut vs_oracle, mut oracle_vs_exact): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let (rad, th) = (rng.gen_range(3.0..50.0), rng.gen_range(0.2..2.9));
        let k = Geometry::at(&s, [0.0, rad, th, 0.5])
            .expect("outside horizon")
            .kretschmann();
        let oracle = kretschmann_oracle(rad, th);
        vs_oracle = vs_oracle.max((k - oracle).abs() / oracle);
        oracle_vs_exact = oracle_vs_exact.max((oracle - 48.0 / rad.powi(6)).abs() / oracle);
    }
    vec![
        below("torsion residual", value(&r, "geometry.torsion"), 1e-10),
        below(
            "cyclic Bianchi residual",
            value(&r, "geometry.bianchi_cyclic"),
            1e-8,
        ),
        below(
            "Kretschmann vs 48/r⁶, relative, suite points",
            value(&r, "geometry.kretschmann_closed_form"),
            1e-6,
        ),
        below(
            "Kretschmann vs library Christoffel route, relative",
            value(&r, "geometry.kretschmann_routes"),
            1e-6,
        ),
        below(
            "Kretschmann vs hand-written Christoffel oracle, relative",
            vs_oracle,
            1e-6,
        ),
        below(
            "hand-written oracle vs 48/r⁶, relative",
            oracle_vs_exact,
            1e-6,
        ),
    ]
}

fn criterion_04() -> Vec<Clause> {
    let mut out = Vec::new();
    for (name, tol) in [
        ("schwarzschild", 1e-6),
        ("einstein_de_sitter", 1e-6),
        ("minkowski", 1e-10),
    ] {
        let r = run(name, Frame::Static, &[], &[Suite::Forms], 4);
        for id in [
            "forms.graded_jacobi",
            "forms.leibniz",
            "forms.d_squared",
            "forms.holonomy",
        ] {
            out.push(below(&format!("{name}: {id}"), value(&r, id), tol));
        }
        out.push(red(below(
            &format!("{name}: forms.derivation_weighted"),
            value(&r, "forms.derivation_weighted"),
            tol,
        )));
    }
    out
}

fn criterion_05() -> Vec<Clause> {
    let s = run("schwarzschild", Frame::Static, &[], &[Suite::Einstein], 16);
    let d = run(
        "einstein_de_sitter",
        Frame::Static,
        &[],
        &[Suite::Einstein],
        16,
    );
    let mut out: Vec<Clause> = [
        "einstein.vacuum_einstein",
        "einstein.vacuum_ricci",
        "einstein.vacuum_maxwell_field",
        "einstein.vacuum_scalar_field",
    ]
    .iter()
    .map(|id| below(&format!("schwarzschild: {id}"), value(&s, id), 1e-8))
    .collect();
    out.push(below(
        "einstein_de_sitter: G vs dust oracle",
        value(&d, "einstein.dust_oracle"),
        1e-6,
    ));
    for (tag, r) in [("schwarzschild", &s), ("einstein_de_sitter", &d)] {
        for id in [
            "einstein.field_equation",
            "einstein.three_form_route",
            "einstein.paravector_route",
        ] {
            out.push(below(&format!("{tag}: {id}"), value(r, id), 1e-6));
        }
    }
    out
}

fn criterion_06() -> Vec<Clause> {
    let r = run("schwarzschild", Frame::Static, &[], &[Suite::Energy], 16);
    vec![
        below(
            "superpotential identity",
            value(&r, "energy.superpotential_identity"),
            1e-6,
        ),
        below(
            "closedness of ⋆𝓣 + ⋆t",
            value(&r, "energy.closedness"),
            1e-5,
        ),
        above(
            "relative change of ⋆t under infall boost at r = 4m",
            value(&r, "energy.pseudo_energy_gauge_dependence"),
            0.1,
        ),
        below(
            "⋆𝓖 after compensating rotation",
            value(&r, "energy.einstein_covariance"),
            1e-8,
        ),
    ]
}

fn criterion_07() -> Vec<Clause> {
    let iso = run(
        "schwarzschild_isotropic",
        Frame::Static,
        &[("m", 1.0)],
        &[Suite::Energy],
        4,
    );
    let flat = run("minkowski", Frame::Static, &[], &[Suite::Energy], 4);
    let def = run(
        "schwarzschild_deformed",
        Frame::Static,
        &[("m", 1.0)],
        &[Suite::Energy],
        4,
    );
    let md = value(&def, "energy.mass_flux_value");
    vec![
        within(
            "isotropic chart m_i",
            value(&iso, "energy.mass_flux_value"),
            0.999,
            1.001,
        ),
        below(
            "Minkowski |m_i|",
            value(&flat, "energy.mass_flux_value").abs(),
            1e-6,
        ),
        red(above("deformed chart |m_i − 1|", (md - 1.0).abs(), 1e-2)),
    ]
}

fn criterion_08() -> Vec<Clause> {
    let mut out = Vec::new();
    let runs = [
        ("schwarzschild", Frame::Static),
        ("schwarzschild", Frame::Rotation),
        ("schwarzschild_pg", Frame::Static),
        ("einstein_de_sitter", Frame::Static),
        ("minkowski_spherical", Frame::Static),
    ];
    let mut rotated = None;
    let mut eds = None;
    for (name, frame) in runs {
        let r = run(name, frame, &[], &[Suite::Sachs], 16);
        let tag = format!("{name}/{}", frame.name());
        out.push(below(
            &format!("{tag}: total derivative of q_μ"),
            value(&r, "sachs.trivial_identity"),
            1e-8,
        ));
        out.push(below(
            &format!("{tag}: q^μq̌_μ = −4"),
            value(&r, "sachs.trace_contraction"),
            1e-12,
        ));
        out.push(below(
            &format!("{tag}: q^μωq̌_μ = 0"),
            value(&r, "sachs.sandwich"),
            1e-10,
        ));
        if name == "schwarzschild" && frame == Frame::Rotation {
            rotated = Some(r);
        } else if name == "einstein_de_sitter" {
            eds = Some(r);
        }
    }
    let eds = eds.expect("dust run");
    out.push(below(
        "einstein_de_sitter: covariant divergence of 𝔽",
        value(&eds, "sachs.field_divergence"),
        1e-5,
    ));
    let rotated = rotated.expect("rotated run");
    out.push(red(above(
        "rotated schwarzschild: weakest bivector part among 𝔽_ργ",
        value(&rotated, "sachs.field_bivector_content"),
        1e-8,
    )));
    out
}

fn criterion_09() -> Vec<Clause> {
    let r = run("schwarzschild", Frame::Static, &[], &[Suite::Dirac], 16);
    vec![
        below("∂ = d − δ", value(&r, "dirac.split"), 1e-10),
        below("dd = 0", value(&r, "dirac.dd"), 1e-8),
        below("δδ = 0", value(&r, "dirac.deltadelta"), 1e-8),
        below(
            "(∂∧∂)θ^a vs Ricci 1-forms",
            value(&r, "dirac.ricci_operator"),
            1e-6,
        ),
        below("tetrad wave equation", value(&r, "dirac.tetrad_wave"), 1e-5),
        above(
            "|(□ + T)θ^a| at r = 4m",
            value(&r, "dirac.box_plus_trace"),
            1e-2,
        ),
    ]
}

fn criterion_10() -> Vec<Clause> {
    let tol = cliffgr::suites::sachs::CONSTRAINT_TOL;
    let d = run(
        "einstein_de_sitter",
        Frame::Static,
        &[],
        &[Suite::Sachs],
        16,
    );
    let s = run("schwarzschild", Frame::Static, &[], &[Suite::Sachs], 16);
    let m = run("minkowski", Frame::Static, &[], &[Suite::Sachs], 16);
    vec![
        above(
            "einstein_de_sitter: |Ric(e_0,e_0)|",
            value(&d, "sachs.constraint_ric00_value"),
            tol,
        ),
        below(
            "einstein_de_sitter: Ric(e_0,e_0) − ½ρ",
            value(&d, "sachs.constraint_ric00"),
            1e-6,
        ),
        below(
            "schwarzschild: |Ric(e_0,·)|",
            value(&s, "sachs.constraint_ric_e0"),
            tol,
        ),
        above(
            "schwarzschild: |D e_0|",
            value(&s, "sachs.constraint_de0"),
            tol,
        ),
        below("minkowski: |D e_0|", value(&m, "sachs.constraint_de0"), tol),
        below(
            "minkowski: |Ric(e_0,·)|",
            value(&m, "sachs.constraint_ric_e0"),
            tol,
        ),
        below(
            "minkowski: |D_{e_0}e_0|",
            value(&m, "sachs.constraint_geodesic"),
            tol,
        ),
        below(
            "minkowski: |D_{e_0}e_i|",
            value(&m, "sachs.constraint_fermi"),
            tol,
        ),
        above(
            "minkowski: teleparallel flag",
            value(&m, "sachs.constraint_teleparallel"),
            0.5,
        ),
    ]
}

fn criterion_11() -> Vec<Clause> {
    let cli = || {
        let out = Command::new(env!("CARGO_BIN_EXE_cliffgr"))
            .args([
                "--metric",
                "schwarzschild",
                "--suite",
                "all",
                "--samples",
                "4",
                "--seed",
                "99",
                "--format",
                "json",
            ])
            .output()
            .expect("cli runs");
        out.stdout
    };
    let (a, b) = (cli(), cli());
    let differing = a.iter().zip(&b).filter(|(x, y)| x != y).count() + a.len().abs_diff(b.len());
    vec![
        above("report length in bytes", a.len() as f64, 100.0),
        below("bytes differing between two runs", differing as f64, 0.5),
    ]
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Vec<Clause>); 11] = [
        (
            "algebra identities on 1000 random multivectors",
            criterion_01,
        ),
        ("matrix representation and spinor bases", criterion_02),
        ("Schwarzschild geometry on 100 seeded points", criterion_03),
        ("exterior covariant calculus identities", criterion_04),
        ("field equations and their dressings", criterion_05),
        ("superpotentials and gauge dependence", criterion_06),
        ("surface-integral mass", criterion_07),
        ("paravector dressing", criterion_08),
        ("Dirac operator and wave equations", criterion_09),
        ("inertial-frame conditions", criterion_10),
        ("determinism of the CLI report", criterion_11),
    ];
    let mut unexpected = 0;
    for (n, (title, f)) in criteria.iter().enumerate() {
        let clauses = f();
        let pass = clauses.iter().all(|c| c.ok);
        println!(
            "criterion {:02}: {} {title}",
            n + 1,
            if pass { "PASS" } else { "FAIL" }
        );
        for c in &clauses {
            let mark = match (c.ok, c.known_red) {
                (true, _) => "ok  ",
                (false, true) => "red ",
                (false, false) => "FAIL",
            };
            println!("    {mark} {:<62} {:>12.4e} {}", c.label, c.value, c.bound);
            if !c.ok && !c.known_red {
                unexpected += 1;
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} clause(s) failed outside the documented reds");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
