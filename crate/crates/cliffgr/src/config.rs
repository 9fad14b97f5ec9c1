//! Run configuration: metric selection, suites, sampling and tolerances.
//!
//! A configuration can come from a TOML file, from command-line flags, or
//! both; [`SuiteConfig::merge`] lets flags override file values.

use crate::chart::{
    builtin, FiniteDifference, GeometryError, LocalLorentz, Spacetime, Tetrad, Transformed,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown suite '{0}' (expected one of {list})", list = Suite::ALL.map(|s| s.name()).join(", "))]
    UnknownSuite(String),
    #[error("unknown provider '{0}' (expected analytic or fd)")]
    UnknownProvider(String),
    #[error("unknown frame '{0}' (expected static, rotation, boost or infall)")]
    UnknownFrame(String),
    #[error("malformed key=value pair '{0}'")]
    Pair(String),
    #[error("invalid value: {0}")]
    Invalid(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("config file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// Verification suites, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", try_from = "String")]
pub enum Suite {
    Algebra,
    Spinor,
    Geometry,
    Forms,
    Einstein,
    Sachs,
    Energy,
    Dirac,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Algebra,
        Suite::Spinor,
        Suite::Geometry,
        Suite::Forms,
        Suite::Einstein,
        Suite::Sachs,
        Suite::Energy,
        Suite::Dirac,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Spinor => "spinor",
            Suite::Geometry => "geometry",
            Suite::Forms => "forms",
            Suite::Einstein => "einstein",
            Suite::Sachs => "sachs",
            Suite::Energy => "energy",
            Suite::Dirac => "dirac",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| ConfigError::UnknownSuite(s.to_string()))
    }
}

impl TryFrom<String> for Suite {
    type Error = ConfigError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", try_from = "String")]
pub enum Provider {
    #[default]
    Analytic,
    Fd,
}

impl Provider {
    pub fn name(self) -> &'static str {
        match self {
            Provider::Analytic => "analytic",
            Provider::Fd => "fd",
        }
    }
}

impl FromStr for Provider {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "analytic" => Ok(Provider::Analytic),
            "fd" => Ok(Provider::Fd),
            other => Err(ConfigError::UnknownProvider(other.to_string())),
        }
    }
}

impl TryFrom<String> for Provider {
    type Error = ConfigError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Local Lorentz frame change applied on top of the built-in tetrad.
///
/// Parameters come from the metric `params`: `angle` and `rapidity` set the
/// constant part, `k0..k3` the coordinate gradient.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", try_from = "String")]
pub enum Frame {
    #[default]
    Static,
    /// Rotation of legs 1 and 2.
    Rotation,
    /// Boost along leg 1.
    Boost,
    /// Radial infall boost (Schwarzschild only).
    Infall,
}

impl Frame {
    pub fn name(self) -> &'static str {
        match self {
            Frame::Static => "static",
            Frame::Rotation => "rotation",
            Frame::Boost => "boost",
            Frame::Infall => "infall",
        }
    }
}

impl FromStr for Frame {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "static" => Ok(Frame::Static),
            "rotation" => Ok(Frame::Rotation),
            "boost" => Ok(Frame::Boost),
            "infall" => Ok(Frame::Infall),
            other => Err(ConfigError::UnknownFrame(other.to_string())),
        }
    }
}

impl TryFrom<String> for Frame {
    type Error = ConfigError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Which spacetime, chart, frame and derivative provider to use.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricSpec {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub frame: Frame,
    pub provider: Provider,
    pub fd_step: f64,
}

impl Default for MetricSpec {
    fn default() -> Self {
        MetricSpec {
            name: "minkowski".into(),
            params: BTreeMap::new(),
            frame: Frame::Static,
            provider: Provider::Analytic,
            fd_step: crate::chart::provider::DEFAULT_STEP,
        }
    }
}

impl MetricSpec {
    pub fn named(name: &str) -> Self {
        MetricSpec {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.into(), value);
        self
    }

    pub fn with_frame(mut self, frame: Frame) -> Self {
        self.frame = frame;
        self
    }

    pub fn spacetime(&self) -> Result<Spacetime, ConfigError> {
        Ok(builtin(&self.name, &self.params)?)
    }

    fn param(&self, key: &str, default: f64) -> f64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    fn gradient(&self) -> [f64; 4] {
        std::array::from_fn(|k| self.param(&format!("k{k}"), 0.0))
    }

    /// The frame change, if any.
    pub fn lorentz(&self) -> Result<Option<LocalLorentz>, ConfigError> {
        Ok(match self.frame {
            Frame::Static => None,
            Frame::Rotation => Some(LocalLorentz::Rotation {
                plane: (1, 2),
                angle: self.param("angle", 0.3),
                gradient: self.gradient(),
            }),
            Frame::Boost => Some(LocalLorentz::Boost {
                axis: 1,
                rapidity: self.param("rapidity", 0.5),
                gradient: self.gradient(),
            }),
            Frame::Infall => match self.spacetime()? {
                Spacetime::Schwarzschild { m } => Some(LocalLorentz::Infall { m }),
                _ => {
                    return Err(ConfigError::Invalid(
                        "the infall frame needs the schwarzschild chart".into(),
                    ))
                }
            },
        })
    }

    /// Builds the tetrad with the requested frame and derivative provider.
    pub fn tetrad(&self) -> Result<Box<dyn Tetrad>, ConfigError> {
        let base = self.spacetime()?;
        let analytic: Box<dyn Tetrad> = match self.lorentz()? {
            None => Box::new(base),
            Some(l) => Box::new(Transformed::new(base, l)),
        };
        Ok(match self.provider {
            Provider::Analytic => analytic,
            Provider::Fd => {
                if !(self.fd_step > 0.0) {
                    return Err(ConfigError::Invalid(format!("fd step {}", self.fd_step)));
                }
                Box::new(FiniteDifference::with_step(analytic, self.fd_step))
            }
        })
    }
}

/// A fully resolved run configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub metric: MetricSpec,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub samples: usize,
    /// Overrides keyed by suite name or by check id.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            metric: MetricSpec::default(),
            suites: Vec::new(),
            seed: 1,
            samples: 16,
            tolerances: BTreeMap::new(),
        }
    }
}

/// Partial configuration as read from a file or flags; `None` means unset.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartialConfig {
    pub metric: Option<PartialMetric>,
    pub suites: Option<Vec<Suite>>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub tolerances: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartialMetric {
    pub name: Option<String>,
    pub params: Option<BTreeMap<String, f64>>,
    pub frame: Option<Frame>,
    pub provider: Option<Provider>,
    pub fd_step: Option<f64>,
}

impl PartialConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }
}

impl SuiteConfig {
    /// Applies `over` on top of `self`. Parameter and tolerance maps merge
    /// key by key.
    pub fn merge(mut self, over: PartialConfig) -> Self {
        if let Some(m) = over.metric {
            if let Some(n) = m.name {
                self.metric.name = n;
            }
            if let Some(p) = m.params {
                self.metric.params.extend(p);
            }
            if let Some(f) = m.frame {
                self.metric.frame = f;
            }
            if let Some(p) = m.provider {
                self.metric.provider = p;
            }
            if let Some(s) = m.fd_step {
                self.metric.fd_step = s;
            }
        }
        if let Some(s) = over.suites {
            self.suites = s;
        }
        if let Some(s) = over.seed {
            self.seed = s;
        }
        if let Some(n) = over.samples {
            self.samples = n;
        }
        if let Some(t) = over.tolerances {
            self.tolerances.extend(t);
        }
        self
    }

    /// Tolerance for a check: a check-id override beats a suite override.
    pub fn tolerance(&self, suite: Suite, id: &str, default: f64) -> f64 {
        self.tolerances
            .get(id)
            .or_else(|| self.tolerances.get(suite.name()))
            .copied()
            .unwrap_or(default)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.metric.tetrad()?;
        if self.samples == 0 {
            return Err(ConfigError::Invalid("samples must be positive".into()));
        }
        Ok(())
    }
}

/// Parses `key=value` with a numeric value.
pub fn parse_pair(s: &str) -> Result<(String, f64), ConfigError> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| ConfigError::Pair(s.to_string()))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| ConfigError::Pair(s.to_string()))?;
    Ok((k.trim().to_string(), v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_rejected() {
        assert!(matches!(
            "gravity".parse::<Suite>(),
            Err(ConfigError::UnknownSuite(_))
        ));
        let err = PartialConfig::from_toml("suites = [\"algebra\", \"bogus\"]").unwrap_err();
        assert!(err.to_string().contains("bogus"));
    }

    #[test]
    fn flags_override_file() {
        let file = PartialConfig::from_toml(
            "seed = 3\nsamples = 5\n[metric]\nname = \"schwarzschild\"\nparams = { m = 2.0 }\n",
        )
        .unwrap();
        let flags = PartialConfig {
            seed: Some(9),
            metric: Some(PartialMetric {
                params: Some([("alpha".to_string(), 1.0)].into()),
                ..Default::default()
            }),
            ..Default::default()
        };
        let c = SuiteConfig::default().merge(file).merge(flags);
        assert_eq!(c.seed, 9);
        assert_eq!(c.samples, 5);
        assert_eq!(c.metric.name, "schwarzschild");
        assert_eq!(c.metric.params["m"], 2.0);
        assert_eq!(c.metric.params["alpha"], 1.0);
    }

    #[test]
    fn tolerance_precedence() {
        let mut c = SuiteConfig::default();
        c.tolerances.insert("dirac".into(), 1e-3);
        c.tolerances.insert("dirac.split".into(), 1e-9);
        assert_eq!(c.tolerance(Suite::Dirac, "dirac.split", 1.0), 1e-9);
        assert_eq!(c.tolerance(Suite::Dirac, "dirac.dd", 1.0), 1e-3);
        assert_eq!(c.tolerance(Suite::Forms, "forms.x", 1.0), 1.0);
    }

    #[test]
    fn pairs() {
        assert_eq!(parse_pair("m=1.5").unwrap(), ("m".to_string(), 1.5));
        assert!(parse_pair("m").is_err());
        assert!(parse_pair("m=x").is_err());
    }
}
