//! Seeded Monte Carlo simulation of a swarm flying a landmark plan.
//!
//! At every segment each vehicle independently reads the advice at `v_i`
//! (correct with probability `1 - q`) and recognises `v_{i+1}` (correct with
//! probability `1 - p`). The swarm pools both rounds by majority. If either
//! pooled decision is wrong the swarm flies to a random wrong neighbour,
//! notices the mistake on arrival, returns and tries again, up to a retry
//! budget shared by the whole mission.

mod experiment;
mod rng;
mod table;
mod trial;
mod vote;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::energy::{EnergyError, PowerModel};
use crate::prob::{Probability, SwarmSize};

pub use experiment::{run_experiment, Experiment};
pub use rng::{DrawKey, DrawKind, RngSpec, MAX_RETRY_CAP, MAX_SEGMENTS, MAX_SWARM};
pub use table::{format_sig, ResultRow, ResultTable, CSV_HEADER};
pub use trial::{run_trial, Course, TrialOutcome, VoteRecord};
pub use vote::{
    binary_decision_correct, majority_advice, majority_recognition, majority_vote, Decision,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("vote list is empty")]
    NoVotes,
    #[error("swarm of {0} exceeds the supported maximum of {MAX_SWARM}")]
    SwarmTooLarge(u32),
    #[error("retry cap {0} exceeds the supported maximum of {MAX_RETRY_CAP}")]
    RetryCapTooLarge(u32),
    #[error("plan has {0} segments, more than the supported {MAX_SEGMENTS}")]
    PlanTooLong(usize),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("no swarm sizes given")]
    NoSwarmSizes,
    #[error(transparent)]
    Energy(#[from] EnergyError),
    #[error("cannot start worker pool: {0}")]
    Workers(String),
}

/// Per-vehicle error probabilities, i.i.d. across vehicles, landmarks and
/// retries.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorModel {
    /// Recognition error.
    pub p: Probability,
    /// Advice error.
    pub q: Probability,
}

impl ErrorModel {
    pub fn new(p: Probability, q: Probability) -> Self {
        ErrorModel { p, q }
    }

    /// Same error rate for both kinds, `1 - success_ratio`.
    pub fn from_success_ratio(ratio: Probability) -> Self {
        ErrorModel {
            p: ratio.complement(),
            q: ratio.complement(),
        }
    }
}

/// How an exact even split of correct and incorrect votes is scored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TiePolicy {
    /// Half the swarm is enough, matching the `ceil(m/2)` bound of the
    /// closed-form majority error.
    #[default]
    TieIsSuccess,
    /// Each vehicle follows its own reading; the step only succeeds if the
    /// correct subgroup strictly outnumbers the incorrect one.
    TieIsFragmentation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwarmConfig {
    pub m: SwarmSize,
    pub tie_policy: TiePolicy,
    /// Wrong decisions tolerated per mission before it is abandoned.
    pub retry_cap: u32,
    /// Cruise speed, m/s.
    pub speed: f64,
    pub power: PowerModel,
    pub record_votes: bool,
}

impl SwarmConfig {
    pub const DEFAULT_RETRY_CAP: u32 = 100;
    pub const DEFAULT_SPEED: f64 = 5.0;

    pub fn new(m: SwarmSize) -> Self {
        SwarmConfig {
            m,
            tie_policy: TiePolicy::default(),
            retry_cap: Self::DEFAULT_RETRY_CAP,
            speed: Self::DEFAULT_SPEED,
            power: PowerModel::default(),
            record_votes: false,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.m.get() > MAX_SWARM {
            return Err(SimError::SwarmTooLarge(self.m.get()));
        }
        if self.retry_cap > MAX_RETRY_CAP {
            return Err(SimError::RetryCapTooLarge(self.retry_cap));
        }
        self.power.check_speed(self.speed)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_defaults() {
        let c = SwarmConfig::new(SwarmSize::new(3).unwrap());
        assert_eq!(c.retry_cap, 100);
        assert_eq!(c.speed, 5.0);
        assert_eq!(c.tie_policy, TiePolicy::TieIsSuccess);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn config_validation() {
        let base = SwarmConfig::new(SwarmSize::new(3).unwrap());
        let slow = SwarmConfig {
            speed: 0.0,
            ..base.clone()
        };
        assert!(matches!(slow.validate(), Err(SimError::Energy(_))));
        let huge = SwarmConfig {
            m: SwarmSize::new(MAX_SWARM + 1).unwrap(),
            ..base.clone()
        };
        assert_eq!(huge.validate(), Err(SimError::SwarmTooLarge(MAX_SWARM + 1)));
        let patient = SwarmConfig {
            retry_cap: MAX_RETRY_CAP + 1,
            ..base
        };
        assert!(matches!(
            patient.validate(),
            Err(SimError::RetryCapTooLarge(_))
        ));
    }

    #[test]
    fn success_ratio_maps_to_error() {
        let e = ErrorModel::from_success_ratio(Probability::new(0.8).unwrap());
        assert!((e.p.value() - 0.2).abs() < 1e-15);
        assert_eq!(e.p, e.q);
    }

    #[test]
    fn tie_policy_names() {
        assert_eq!(
            serde_json::to_string(&TiePolicy::TieIsFragmentation).unwrap(),
            "\"tie-is-fragmentation\""
        );
    }
}
