use clap::{Parser, ValueEnum};
use cliffgr::config::{
    parse_pair, ConfigError, Frame, PartialConfig, PartialMetric, Provider, Suite, SuiteConfig,
};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

/// Numerically verify Clifford-bundle identities on a tetrad spacetime.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Built-in metric (minkowski, minkowski_spherical, schwarzschild,
    /// schwarzschild_isotropic, schwarzschild_deformed, schwarzschild_pg,
    /// einstein_de_sitter).
    #[arg(long)]
    metric: Option<String>,
    /// Metric or frame parameter, e.g. `m=1` or `angle=0.3`. Repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_pair)]
    params: Vec<(String, f64)>,
    /// Local Lorentz change of the tetrad (static, rotation, boost, infall).
    #[arg(long, value_parser = str::parse::<Frame>)]
    frame: Option<Frame>,
    /// Suite to run. Repeatable; `all` selects every suite.
    #[arg(long = "suite", value_name = "SUITE")]
    suites: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Sample points (or random multivectors) per suite.
    #[arg(long)]
    samples: Option<usize>,
    /// Derivative provider (analytic or fd).
    #[arg(long, value_parser = str::parse::<Provider>)]
    provider: Option<Provider>,
    /// Finite-difference step.
    #[arg(long)]
    fd_step: Option<f64>,
    /// Tolerance override keyed by suite name or check id. Repeatable.
    #[arg(long = "tol", value_name = "KEY=VALUE", value_parser = parse_pair)]
    tolerances: Vec<(String, f64)>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// TOML configuration; flags take precedence over it.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn suites(names: &[String]) -> Result<Option<Vec<Suite>>, ConfigError> {
    if names.is_empty() {
        return Ok(None);
    }
    let mut out = Vec::new();
    for n in names {
        if n == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(n.parse()?);
        }
    }
    Ok(Some(out))
}

fn resolve(args: &Args) -> Result<SuiteConfig, ConfigError> {
    let mut config = SuiteConfig::default();
    if let Some(path) = &args.config {
        config = config.merge(PartialConfig::from_toml(&std::fs::read_to_string(path)?)?);
    }
    let flags = PartialConfig {
        metric: Some(PartialMetric {
            name: args.metric.clone(),
            params: (!args.params.is_empty())
                .then(|| args.params.iter().cloned().collect::<BTreeMap<_, _>>()),
            frame: args.frame,
            provider: args.provider,
            fd_step: args.fd_step,
        }),
        suites: suites(&args.suites)?,
        seed: args.seed,
        samples: args.samples,
        tolerances: (!args.tolerances.is_empty())
            .then(|| args.tolerances.iter().cloned().collect()),
    };
    Ok(config.merge(flags))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let report = match resolve(&args).and_then(|c| cliffgr::suites::run(&c)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
            eprintln!(
                "{} checks, {} failed",
                report.summary.total, report.summary.failed
            );
        }
        None => print!("{text}"),
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
