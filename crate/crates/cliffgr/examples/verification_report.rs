//! Run selected suites programmatically and print a markdown report.

use cliffgr::config::{Frame, MetricSpec, Suite, SuiteConfig};

fn main() {
    let config = SuiteConfig {
        metric: MetricSpec::named("schwarzschild")
            .with_param("m", 1.0)
            .with_frame(Frame::Rotation),
        suites: vec![Suite::Geometry, Suite::Einstein, Suite::Dirac],
        samples: 6,
        seed: 11,
        ..SuiteConfig::default()
    };
    let report = cliffgr::suites::run(&config).expect("valid configuration");
    print!("{}", report.to_markdown());
    let s = &report.summary;
    eprintln!("{} of {} checks passed", s.passed, s.total);
}
