//! Experiment configuration: one JSON document, overridable from flags.
//!
//! ```json
//! {
//!   "scenario": "grid10.json",
//!   "ratio": 0.8,
//!   "m": [1, 3, 5, 7],
//!   "trials": 10000,
//!   "master_seed": 2019,
//!   "retry_cap": 100,
//!   "speed": 5.0,
//!   "power": {"c0": 200.0, "c1": 0.0, "c2": 0.0},
//!   "output": "results.csv"
//! }
//! ```
//!
//! Error rates come either from `ratio` (success ratio, `p = q = 1 - ratio`)
//! or from explicit `p` and `q`, never both. Relative paths in the file are
//! resolved against the file's directory.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use swarmnav_core::energy::PowerModel;
use swarmnav_core::sim::{ErrorModel, Experiment, SwarmConfig, TiePolicy};
use swarmnav_core::{Probability, SwarmSize};

use crate::CliError;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(default)]
    pub m: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retry_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub speed: Option<f64>,
    #[serde(default)]
    pub power: PowerModel,
    #[serde(default)]
    pub tie_policy: TiePolicy,
    #[serde(default)]
    pub workers: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

/// Values given on the command line; each replaces its file counterpart.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub scenario: Option<PathBuf>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub ratio: Option<f64>,
    pub m: Option<Vec<u32>>,
    pub trials: Option<u64>,
    pub master_seed: Option<u64>,
    pub retry_cap: Option<u32>,
    pub speed: Option<f64>,
    pub tie_policy: Option<TiePolicy>,
    pub workers: Option<usize>,
    pub output: Option<PathBuf>,
}

/// A configuration with every path made usable and every value checked.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedRun {
    pub scenario: PathBuf,
    pub experiment: Experiment,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
    }

    /// Reads a config file and rebases its relative paths onto the file's
    /// directory.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        let mut config = Self::from_json(&text)
            .map_err(|e| CliError::Config(format!("{}: {}", path.display(), e.message())))?;
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        config.scenario = config.scenario.map(|p| base.join(p));
        config.output = config.output.map(|p| base.join(p));
        Ok(config)
    }

    pub fn apply(&mut self, o: Overrides) {
        if o.ratio.is_some() {
            self.ratio = o.ratio;
            self.p = None;
            self.q = None;
        }
        if o.p.is_some() || o.q.is_some() {
            // A file ratio turns into explicit rates so one flag can adjust
            // just one of them.
            if let Some(r) = self.ratio.take() {
                self.p = Some(1.0 - r);
                self.q = Some(1.0 - r);
            }
            self.p = o.p.or(self.p);
            self.q = o.q.or(self.q);
        }
        if let Some(v) = o.m {
            self.m = v;
        }
        if let Some(v) = o.master_seed {
            self.master_seed = v;
        }
        if let Some(v) = o.workers {
            self.workers = v;
        }
        if let Some(v) = o.tie_policy {
            self.tie_policy = v;
        }
        self.scenario = o.scenario.or(self.scenario.take());
        self.trials = o.trials.or(self.trials);
        self.retry_cap = o.retry_cap.or(self.retry_cap);
        self.speed = o.speed.or(self.speed);
        self.output = o.output.or(self.output.take());
    }

    pub fn error_model(&self) -> Result<ErrorModel, CliError> {
        let prob = |name: &str, v: f64| {
            Probability::new(v).map_err(|e| CliError::Config(format!("{name}: {e}")))
        };
        match (self.ratio, self.p, self.q) {
            (Some(r), None, None) => Ok(ErrorModel::from_success_ratio(prob("ratio", r)?)),
            (None, Some(p), Some(q)) => Ok(ErrorModel::new(prob("p", p)?, prob("q", q)?)),
            (Some(_), _, _) => Err(CliError::Config(
                "give either ratio or p and q, not both".to_string(),
            )),
            _ => Err(CliError::Config(
                "error rates missing: set ratio, or both p and q".to_string(),
            )),
        }
    }

    pub fn resolve(&self) -> Result<ResolvedRun, CliError> {
        let scenario = self
            .scenario
            .clone()
            .ok_or_else(|| CliError::Config("no scenario given".to_string()))?;
        let errors = self.error_model()?;
        if self.m.is_empty() {
            return Err(CliError::Config("m list is empty".to_string()));
        }
        let m_values = self
            .m
            .iter()
            .map(|&m| SwarmSize::new(m).map_err(|e| CliError::Config(format!("m: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let trials = match self.trials {
            Some(0) | None => {
                return Err(CliError::Config("trials must be at least 1".to_string()))
            }
            Some(n) => n,
        };

        let mut experiment = Experiment::new(errors, m_values, trials, self.master_seed);
        experiment.workers = self.workers;
        experiment.swarm.retry_cap = self.retry_cap.unwrap_or(SwarmConfig::DEFAULT_RETRY_CAP);
        experiment.swarm.speed = self.speed.unwrap_or(SwarmConfig::DEFAULT_SPEED);
        experiment.swarm.power = self.power;
        experiment.swarm.tie_policy = self.tie_policy;
        experiment
            .swarm
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(ResolvedRun {
            scenario,
            experiment,
            output: self.output.clone(),
        })
    }
}
