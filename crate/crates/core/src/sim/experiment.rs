use rayon::prelude::*;

use crate::prob::{swarm_path_success, PathLength, SwarmSize};
use crate::terrain::Scenario;

use super::rng::{RngSpec, TrialStreams};
use super::table::{ResultRow, ResultTable};
use super::trial::{Course, TrialOutcome};
use super::{ErrorModel, SimError, SwarmConfig};

// Trials are simulated in parallel one chunk at a time and folded in index
// order, so the sums never depend on how work was scheduled.
const CHUNK: u64 = 4096;

/// A sweep over swarm sizes with everything else held fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct Experiment {
    pub errors: ErrorModel,
    /// Template for every row; its `m` is replaced by each entry of `m_values`.
    pub swarm: SwarmConfig,
    pub m_values: Vec<SwarmSize>,
    pub trials: u64,
    pub master_seed: u64,
    /// Worker threads; 0 lets the pool pick one per core.
    pub workers: usize,
}

impl Experiment {
    pub fn new(
        errors: ErrorModel,
        m_values: Vec<SwarmSize>,
        trials: u64,
        master_seed: u64,
    ) -> Self {
        let template = m_values
            .first()
            .copied()
            .unwrap_or(SwarmSize::new(1).expect("1 > 0"));
        Experiment {
            errors,
            swarm: SwarmConfig::new(template),
            m_values,
            trials,
            master_seed,
            workers: 0,
        }
    }
}

/// Neumaier compensated sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Runs `trials` seeded trials per swarm size and aggregates one row each.
///
/// Trial `i` of every row uses the stream `(master_seed, i)`, so rows share
/// common random numbers and the table is identical for any worker count.
pub fn run_experiment(
    scenario: &Scenario,
    experiment: &Experiment,
) -> Result<ResultTable, SimError> {
    if experiment.trials == 0 {
        return Err(SimError::NoTrials);
    }
    if experiment.m_values.is_empty() {
        return Err(SimError::NoSwarmSizes);
    }
    let course = Course::new(scenario)?;
    for &m in &experiment.m_values {
        SwarmConfig {
            m,
            ..experiment.swarm.clone()
        }
        .validate()?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(experiment.workers)
        .build()
        .map_err(|e| SimError::Workers(e.to_string()))?;

    let k = PathLength(course.segments() as u32);
    let errors = experiment.errors;
    let mut rows = Vec::with_capacity(experiment.m_values.len());
    for &m in &experiment.m_values {
        let swarm = SwarmConfig {
            m,
            record_votes: false,
            ..experiment.swarm.clone()
        };
        let mut failures = 0_u64;
        let mut detours = 0_u64;
        let mut distance = CompensatedSum::default();
        let mut energy = CompensatedSum::default();

        let mut start = 0;
        while start < experiment.trials {
            let end = (start + CHUNK).min(experiment.trials);
            let outcomes: Vec<TrialOutcome> = pool.install(|| {
                (start..end)
                    .into_par_iter()
                    .map(|trial_index| {
                        let spec = RngSpec {
                            master_seed: experiment.master_seed,
                            trial_index,
                        };
                        course
                            .fly(&errors, &swarm, TrialStreams::new(spec, false))
                            .0
                    })
                    .collect()
            });
            for o in &outcomes {
                failures += u64::from(!o.success);
                detours += u64::from(o.wasted_detours);
                distance.add(o.distance_flown);
                energy.add(o.energy);
            }
            start = end;
        }

        let n = experiment.trials as f64;
        let fail_rate = failures as f64 / n;
        rows.push(ResultRow {
            m: m.get(),
            p: errors.p.value(),
            q: errors.q.value(),
            trials: experiment.trials,
            failures,
            fail_rate,
            fail_stderr: (fail_rate * (1.0 - fail_rate) / n).sqrt(),
            analytic_fail: 1.0 - swarm_path_success(errors.p, errors.q, k, m).value(),
            mean_distance_m: distance.total() / n,
            mean_energy_j: energy.total() / n,
            mean_detours: detours as f64 / n,
        });
    }
    Ok(ResultTable { rows })
}
