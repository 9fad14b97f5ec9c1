//! Check records, the verification report, and its JSON and Markdown forms.

use crate::config::{Provider, Suite, SuiteConfig};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

/// How a residual is compared with its tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// Passes when `residual < tolerance`.
    Below,
    /// Passes when `residual > tolerance`; used for quantities that must not vanish.
    Above,
    /// Recorded value only; always passes.
    Info,
}

/// One check as produced by a suite, before it is stamped with run metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: String,
    pub label: String,
    pub residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub error: Option<String>,
}

impl Check {
    pub fn below(id: &str, label: &str, residual: f64, tolerance: f64) -> Self {
        Check {
            id: id.into(),
            label: label.into(),
            residual,
            tolerance,
            bound: Bound::Below,
            error: None,
        }
    }

    pub fn above(id: &str, label: &str, residual: f64, tolerance: f64) -> Self {
        Check {
            bound: Bound::Above,
            ..Check::below(id, label, residual, tolerance)
        }
    }

    pub fn info(id: &str, label: &str, value: f64) -> Self {
        Check {
            bound: Bound::Info,
            ..Check::below(id, label, value, 0.0)
        }
    }

    /// A check that could not be evaluated.
    pub fn failed(id: &str, label: &str, error: impl ToString) -> Self {
        Check {
            error: Some(error.to_string()),
            ..Check::below(id, label, f64::NAN, 0.0)
        }
    }

    pub fn pass(&self) -> bool {
        if self.error.is_some() {
            return false;
        }
        match self.bound {
            Bound::Below => self.residual < self.tolerance,
            Bound::Above => self.residual > self.tolerance,
            Bound::Info => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub id: String,
    pub label: String,
    pub suite: Suite,
    pub metric: String,
    pub inputs_digest: String,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub comparison: Bound,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Environment {
    pub crate_version: String,
    pub metric: String,
    pub frame: String,
    pub provider: String,
    pub fd_step: Option<f64>,
    pub seed: u64,
    pub samples: usize,
    pub suites: Vec<Suite>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub environment: Environment,
    pub records: Vec<Record>,
    pub summary: Summary,
}

/// Hex SHA-256 over the inputs that determine a record.
pub fn inputs_digest(config: &SuiteConfig, suite: Suite, id: &str) -> String {
    let mut h = Sha256::new();
    let metric = serde_json::to_string(&config.metric).unwrap_or_default();
    h.update(metric.as_bytes());
    h.update(suite.name().as_bytes());
    h.update(id.as_bytes());
    h.update(config.seed.to_le_bytes());
    h.update((config.samples as u64).to_le_bytes());
    let d = h.finalize();
    d.iter().take(12).fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl VerificationReport {
    pub fn new(config: &SuiteConfig, metric_label: &str, mut records: Vec<Record>) -> Self {
        records.sort_by(|a, b| (a.suite, &a.id).cmp(&(b.suite, &b.id)));
        let passed = records.iter().filter(|r| r.pass).count();
        let m = &config.metric;
        VerificationReport {
            environment: Environment {
                crate_version: env!("CARGO_PKG_VERSION").into(),
                metric: metric_label.into(),
                frame: m.frame.name().into(),
                provider: m.provider.name().into(),
                fd_step: (m.provider == Provider::Fd).then_some(m.fd_step),
                seed: config.seed,
                samples: config.samples,
                suites: config.suites.clone(),
            },
            summary: Summary {
                total: records.len(),
                passed,
                failed: records.len() - passed,
            },
            records,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn record(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }

    /// Pretty JSON with lexicographically ordered keys.
    pub fn to_json(&self) -> String {
        // serde_json's Map is a BTreeMap, so going through Value sorts keys
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let e = &self.environment;
        let mut s = String::new();
        let _ = writeln!(s, "# Verification report\n");
        let _ = writeln!(s, "| metric | frame | provider | seed | samples |");
        let _ = writeln!(s, "|---|---|---|---|---|");
        let provider = match e.fd_step {
            Some(h) => format!("{} (h = {h:e})", e.provider),
            None => e.provider.clone(),
        };
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} |",
            e.metric, e.frame, provider, e.seed, e.samples
        );
        let _ = writeln!(
            s,
            "\n**{} checks, {} passed, {} failed**",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        for suite in Suite::ALL {
            let rows: Vec<&Record> = self.records.iter().filter(|r| r.suite == suite).collect();
            if rows.is_empty() {
                continue;
            }
            let ok = rows.iter().all(|r| r.pass);
            let _ = writeln!(s, "\n## {suite} {}\n", if ok { "[PASS]" } else { "[FAIL]" });
            let _ = writeln!(s, "| check | description | value | bound | status |");
            let _ = writeln!(s, "|---|---|---|---|---|");
            for r in rows {
                let value = match (r.residual, &r.error) {
                    (_, Some(e)) => format!("error: {e}"),
                    (Some(v), None) => format!("{v:.3e}"),
                    (None, None) => "nan".into(),
                };
                let bound = match r.comparison {
                    Bound::Below => format!("< {:.0e}", r.tolerance),
                    Bound::Above => format!("> {:.0e}", r.tolerance),
                    Bound::Info => "recorded".into(),
                };
                let status = if r.pass { "PASS" } else { "**FAIL**" };
                let _ = writeln!(
                    s,
                    "| `{}` | {} | {} | {} | {} |",
                    r.id, r.label, value, bound, status
                );
            }
        }
        s
    }
}

/// Smallest default tolerance for derivative checks under finite differences,
/// set by the noise of nested third differences.
pub const FD_NOISE_FLOOR: f64 = 1e-4;

fn default_tolerance(config: &SuiteConfig, suite: Suite, c: &Check) -> f64 {
    let differentiates = !matches!(suite, Suite::Algebra | Suite::Spinor);
    if config.metric.provider == Provider::Fd && differentiates && c.bound == Bound::Below {
        c.tolerance.max(FD_NOISE_FLOOR)
    } else {
        c.tolerance
    }
}

/// Stamps suite checks with run metadata.
pub fn records(
    config: &SuiteConfig,
    suite: Suite,
    metric: &str,
    checks: Vec<Check>,
) -> Vec<Record> {
    checks
        .into_iter()
        .map(|c| {
            let tolerance = config.tolerance(suite, &c.id, default_tolerance(config, suite, &c));
            let pass = Check {
                tolerance,
                ..c.clone()
            }
            .pass();
            Record {
                inputs_digest: inputs_digest(config, suite, &c.id),
                suite,
                metric: metric.into(),
                residual: c.residual.is_finite().then_some(c.residual),
                tolerance,
                comparison: c.bound,
                pass,
                error: c.error,
                label: c.label,
                id: c.id,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert!(Check::below("a", "", 1e-9, 1e-8).pass());
        assert!(!Check::below("a", "", f64::NAN, 1e-8).pass());
        assert!(Check::above("a", "", 0.5, 1e-2).pass());
        assert!(!Check::above("a", "", 0.0, 1e-2).pass());
        assert!(Check::info("a", "", 3.0).pass());
        assert!(!Check::failed("a", "", "boom").pass());
    }

    #[test]
    fn json_keys_sorted() {
        let c = SuiteConfig::default();
        let r = VerificationReport::new(&c, "minkowski", Vec::new());
        let j = r.to_json();
        let env = j.find("\"environment\"").unwrap();
        let rec = j.find("\"records\"").unwrap();
        let sum = j.find("\"summary\"").unwrap();
        assert!(env < rec && rec < sum);
        assert!(j.find("\"crate_version\"").unwrap() < j.find("\"fd_step\"").unwrap());
    }
}
