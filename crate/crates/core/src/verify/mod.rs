//! Self-verification: every acceptance criterion and module invariant as a
//! named check with an observed value and a tolerance.

pub mod oracles;
mod suite;

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::ComplexValue;

pub use suite::{CRITERIA, INVARIANTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported trend with no pass/fail meaning.
    Diagnostic,
}

/// One verified quantity. `observed <= tolerance` passes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    /// The suite that produced the check; filled in by [`run_suite`].
    #[serde(default)]
    pub suite: String,
    pub name: String,
    pub status: Status,
    pub observed: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn at_most(name: impl Into<String>, observed: f64, tolerance: f64) -> Self {
        let status = if observed <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            suite: String::new(),
            name: name.into(),
            status,
            observed,
            tolerance,
            note: None,
        }
    }

    pub fn diagnostic(name: impl Into<String>, observed: f64, note: impl Into<String>) -> Self {
        Check {
            suite: String::new(),
            name: name.into(),
            status: Status::Diagnostic,
            observed,
            tolerance: 0.0,
            note: Some(note.into()),
        }
    }

    fn errored(name: &str, tolerance: f64, err: &Error) -> Self {
        Check {
            suite: String::new(),
            name: name.to_string(),
            status: Status::Fail,
            observed: f64::NAN,
            tolerance,
            note: Some(err.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

fn default_size() -> usize {
    crate::quadrature::DEFAULT_N_RADIAL
}

fn default_nus() -> Vec<f64> {
    vec![0.5, 1.0, 2.0]
}

fn default_weights() -> Vec<(f64, f64)> {
    vec![(1.0, 1.0), (2.0, 0.5)]
}

fn default_points() -> Vec<ComplexValue> {
    vec![
        ComplexValue::new(0.0, 0.0),
        ComplexValue::new(1.0, 0.0),
        ComplexValue::new(1.0, 1.0),
    ]
}

fn default_uv() -> Vec<(ComplexValue, ComplexValue)> {
    vec![
        (ComplexValue::new(0.3, 0.0), ComplexValue::new(0.5, 0.0)),
        (ComplexValue::new(0.0, 0.5), ComplexValue::new(0.2, 0.0)),
        (ComplexValue::new(-0.4, 0.0), ComplexValue::new(0.4, 0.0)),
    ]
}

fn default_seed() -> u64 {
    20_240_601
}

/// Settings for a verification run. Every field has a default, so `{}` is a
/// valid config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_size")]
    pub n_radial: usize,
    #[serde(default = "default_size")]
    pub n_angular: usize,
    #[serde(default = "default_size")]
    pub quadrant_n: usize,
    /// Per-check overrides, keyed by check name.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default = "default_nus")]
    pub nu: Vec<f64>,
    /// `(α, β)` pairs for the boundedness bracket.
    #[serde(default = "default_weights")]
    pub alpha_beta: Vec<(f64, f64)>,
    /// Points `w` for the boundedness bracket.
    #[serde(default = "default_points")]
    pub w: Vec<ComplexValue>,
    /// `(u, v)` pairs for the eigenfunction relation.
    #[serde(default = "default_uv")]
    pub uv: Vec<(ComplexValue, ComplexValue)>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty config deserializes")
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for (what, n) in [
            ("n_radial", self.n_radial),
            ("n_angular", self.n_angular),
            ("quadrant_n", self.quadrant_n),
        ] {
            if n < 8 {
                return Err(Error::InvalidParameter(format!("{what} must be >= 8 (got {n})")));
            }
        }
        for (name, tol) in &self.tolerances {
            if !(*tol > 0.0) {
                return Err(Error::InvalidParameter(format!("tolerance {name} must be > 0")));
            }
            if suite::default_tolerance(name).is_none() {
                return Err(Error::InvalidParameter(format!("unknown check name {name:?}")));
            }
        }
        if self.nu.iter().any(|nu| !(*nu > 0.0)) {
            return Err(Error::InvalidParameter("every nu must be > 0".into()));
        }
        if self
            .uv
            .iter()
            .any(|(u, v)| !(Complex64::from(*u).norm() < 1.0 && Complex64::from(*v).norm() < 1.0)) {
            return Err(Error::InvalidParameter("every (u, v) must lie in the open bi-disk".into()));
        }
        Ok(())
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances
            .get(name)
            .copied()
            .or_else(|| suite::default_tolerance(name))
            .unwrap_or(0.0)
    }
}

/// One group of checks, named after what it verifies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

/// Runs one named suite (an acceptance criterion or a module invariant).
pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<SuiteResult> {
    let run = suite::lookup(name)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {name:?}")))?;
    let mut checks = match run(cfg) {
        Ok(checks) => checks,
        Err(err) => vec![Check::errored(name, 0.0, &err)],
    };
    for c in &mut checks {
        c.suite = name.to_string();
    }
    Ok(SuiteResult {
        suite: name.to_string(),
        checks,
    })
}

/// Every suite, run concurrently; results come back in the fixed order of
/// [`CRITERIA`] followed by [`INVARIANTS`].
pub fn run_all(cfg: &RunConfig) -> Result<Vec<SuiteResult>> {
    cfg.validate()?;
    CRITERIA
        .iter()
        .chain(INVARIANTS)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|name| run_suite(name, cfg))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    /// Seconds since the Unix epoch; the only field that varies between runs.
    pub timestamp: u64,
    pub config: RunConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub metadata: Metadata,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(cfg: &RunConfig, suites: &[SuiteResult]) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Report {
            metadata: Metadata {
                tool: env!("CARGO_PKG_NAME").to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                timestamp,
                config: cfg.clone(),
            },
            checks: suites.iter().flat_map(|s| s.checks.iter().cloned()).collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}
