//! Verification suites and the runner that assembles them into a report.
//!
//! Each suite draws its own sample points from a generator seeded by the run
//! seed and the suite name, so suites can run in parallel and still produce
//! identical reports for identical configurations.

pub mod algebra;
pub mod dirac;
pub mod einstein;
pub mod energy;
pub mod forms;
pub mod geometry;
pub mod sachs;
pub mod spinor;

use crate::chart::{ChartPoint, Geometry, Spacetime, Tetrad};
use crate::config::{ConfigError, Suite, SuiteConfig};
use crate::report::{records, Check, VerificationReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

/// What a suite sees of the run.
pub struct Context<'a> {
    pub config: &'a SuiteConfig,
    pub tetrad: &'a dyn Tetrad,
    pub spacetime: Spacetime,
}

impl Context<'_> {
    /// Generator for one suite, independent of the others.
    pub fn rng(&self, suite: Suite) -> ChaCha8Rng {
        let mut h = Sha256::new();
        h.update(self.config.seed.to_le_bytes());
        h.update(suite.name().as_bytes());
        let d = h.finalize();
        let mut seed = [0u8; 32];
        seed.copy_from_slice(&d);
        ChaCha8Rng::from_seed(seed)
    }

    pub fn points(&self, rng: &mut ChaCha8Rng) -> Vec<ChartPoint> {
        (0..self.config.samples)
            .map(|_| self.tetrad.sample(rng))
            .collect()
    }

    /// Geometry at each point; the first failure aborts the list.
    pub fn geometries(&self, points: &[ChartPoint]) -> Result<Vec<Geometry>, String> {
        points
            .iter()
            .map(|&x| Geometry::at(self.tetrad, x).map_err(|e| e.to_string()))
            .collect()
    }

    pub fn mass(&self) -> f64 {
        self.config.metric.params.get("m").copied().unwrap_or(1.0)
    }
}

/// Largest curvature component over the given geometries.
pub(crate) fn curvature_scale(geos: &[Geometry]) -> f64 {
    let mut w: f64 = 0.0;
    for g in geos {
        for mu in 0..4 {
            for nu in 0..4 {
                w = w.max(g.curvature(mu, nu).norm());
            }
        }
    }
    w
}

/// Point at areal radius `4m` on the Schwarzschild family of charts.
pub fn reference_point(s: &Spacetime) -> Option<ChartPoint> {
    // isotropic radius with ρ(1 + m/2ρ)² = 4m
    let iso = |m: f64| m * (3.0 + 2.0 * 2f64.sqrt()) / 2.0;
    let on_axis = |r: f64| {
        let u = r / 3f64.sqrt();
        [0.0, u, u, u]
    };
    match *s {
        Spacetime::Schwarzschild { m } | Spacetime::PainleveGullstrand { m } => {
            Some([0.0, 4.0 * m, 1.0, 0.3])
        }
        Spacetime::SchwarzschildIsotropic { m } => Some(on_axis(iso(m))),
        Spacetime::SchwarzschildDeformed { m, alpha } => {
            // invert ρ = ρ′ + α/ρ′ on the outer branch
            let rho = iso(m);
            Some(on_axis(0.5 * (rho + (rho * rho - 4.0 * alpha).sqrt())))
        }
        _ => None,
    }
}

pub(crate) fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so that a broken evaluation cannot pass
    it.into_iter().fold(0.0, |m: f64, x| {
        if x.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.max(x)
        }
    })
}

pub fn run_suite(ctx: &Context, suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Algebra => algebra::run(ctx),
        Suite::Spinor => spinor::run(ctx),
        Suite::Geometry => geometry::run(ctx),
        Suite::Forms => forms::run(ctx),
        Suite::Einstein => einstein::run(ctx),
        Suite::Sachs => sachs::run(ctx),
        Suite::Energy => energy::run(ctx),
        Suite::Dirac => dirac::run(ctx),
    }
}

const WORKER_STACK: usize = 256 << 20;

/// Runs every requested suite and assembles the report.
pub fn run(config: &SuiteConfig) -> Result<VerificationReport, ConfigError> {
    config.validate()?;
    let tetrad = config.metric.tetrad()?;
    let ctx = Context {
        config,
        tetrad: tetrad.as_ref(),
        spacetime: config.metric.spacetime()?,
    };
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    let metric = tetrad.name();
    // Jet-valued connection arrays are large on the stack in unoptimized builds.
    let pool = rayon::ThreadPoolBuilder::new()
        .stack_size(WORKER_STACK)
        .build()
        .expect("thread pool");
    let all: Vec<_> = pool.install(|| {
        suites
            .par_iter()
            .flat_map_iter(|&s| records(config, s, &metric, run_suite(&ctx, s)))
            .collect()
    });
    Ok(VerificationReport::new(config, &metric, all))
}
