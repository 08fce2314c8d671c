use crate::energy::trial_energy;
use crate::terrain::Scenario;

use super::rng::{DrawKey, DrawKind, RngSpec, TrialStreams, MAX_SEGMENTS};
use super::vote::binary_decision_correct;
use super::{ErrorModel, SimError, SwarmConfig};

/// Votes cast for one attempt at one segment.
#[derive(Clone, Debug, PartialEq)]
pub struct VoteRecord {
    pub segment: u32,
    pub retry: u32,
    /// Per vehicle: did it read the advice at `v_i` correctly.
    pub advice: Vec<bool>,
    /// Per vehicle: did it recognise `v_{i+1}` correctly.
    pub recognition: Vec<bool>,
    pub advice_correct: bool,
    pub recognition_correct: bool,
    pub decision_correct: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialOutcome {
    pub success: bool,
    /// Segment attempts made, retries included.
    pub segments_attempted: u32,
    pub wasted_detours: u32,
    /// Metres flown by each vehicle (the swarm flies together).
    pub distance_flown: f64,
    /// Part of `distance_flown` spent on out-and-back detours.
    pub detour_distance: f64,
    /// Joules for the whole swarm.
    pub energy: f64,
    pub votes: Option<Vec<VoteRecord>>,
}

struct Segment {
    length: f64,
    // Lengths of edges from v_i to every neighbour other than v_{i+1}.
    wrong_turns: Vec<f64>,
}

/// A scenario's flight plan flattened for fast repeated trials.
pub struct Course {
    segments: Vec<Segment>,
    plan_length: f64,
}

impl Course {
    pub fn new(scenario: &Scenario) -> Result<Self, SimError> {
        let graph = &scenario.graph;
        let path = scenario.plan.path();
        if path.len() - 1 > MAX_SEGMENTS {
            return Err(SimError::PlanTooLong(path.len() - 1));
        }
        let segments: Vec<Segment> = path
            .windows(2)
            .map(|hop| Segment {
                length: graph
                    .edge_length(hop[0], hop[1])
                    .expect("scenario plan follows graph edges"),
                wrong_turns: graph
                    .neighbors(hop[0])
                    .filter(|&(n, _)| n != hop[1])
                    .map(|(_, len)| len)
                    .collect(),
            })
            .collect();
        let plan_length = segments.iter().fold(0.0, |acc, s| acc + s.length);
        Ok(Course {
            segments,
            plan_length,
        })
    }

    pub fn segments(&self) -> usize {
        self.segments.len()
    }

    pub fn plan_length(&self) -> f64 {
        self.plan_length
    }

    pub fn run_trial(
        &self,
        errors: &ErrorModel,
        swarm: &SwarmConfig,
        rng: RngSpec,
    ) -> Result<TrialOutcome, SimError> {
        swarm.validate()?;
        Ok(self.fly(errors, swarm, TrialStreams::new(rng, false)).0)
    }

    /// Like [`Course::run_trial`] but also returns the key of every random
    /// draw, in the order taken.
    pub fn run_trial_audited(
        &self,
        errors: &ErrorModel,
        swarm: &SwarmConfig,
        rng: RngSpec,
    ) -> Result<(TrialOutcome, Vec<DrawKey>), SimError> {
        swarm.validate()?;
        let (outcome, streams) = self.fly(errors, swarm, TrialStreams::new(rng, true));
        Ok((outcome, streams.into_log()))
    }

    /// Walks the plan. Each attempt polls advice then recognition; a wrong
    /// swarm decision sends everyone out to a random wrong neighbour of `v_i`
    /// and back before the segment is retried. The mission fails once a wrong
    /// decision occurs with the retry budget spent. `swarm` must be valid.
    pub(crate) fn fly(
        &self,
        errors: &ErrorModel,
        swarm: &SwarmConfig,
        mut streams: TrialStreams,
    ) -> (TrialOutcome, TrialStreams) {
        let m = swarm.m.get();
        let advice_ok = 1.0 - errors.q.value();
        let recognition_ok = 1.0 - errors.p.value();
        let mut advice = Vec::with_capacity(m as usize);
        let mut recognition = Vec::with_capacity(m as usize);
        let mut log = swarm.record_votes.then(Vec::new);

        let mut at = 0_usize;
        let mut retry = 0_u32;
        let mut retries_used = 0_u32;
        let mut attempts = 0_u32;
        let mut detours = 0_u32;
        let mut route = 0.0_f64;
        let mut detour_distance = 0.0_f64;
        let mut success = true;

        while at < self.segments.len() {
            let segment = &self.segments[at];
            let index = at as u32;
            attempts += 1;
            streams.votes(index, retry, DrawKind::Advice, m, advice_ok, &mut advice);
            streams.votes(
                index,
                retry,
                DrawKind::Recognition,
                m,
                recognition_ok,
                &mut recognition,
            );
            let advice_correct = binary_decision_correct(&advice, swarm.tie_policy);
            let recognition_correct = binary_decision_correct(&recognition, swarm.tie_policy);
            let correct = advice_correct && recognition_correct;
            if let Some(log) = &mut log {
                log.push(VoteRecord {
                    segment: index,
                    retry,
                    advice: advice.clone(),
                    recognition: recognition.clone(),
                    advice_correct,
                    recognition_correct,
                    decision_correct: correct,
                });
            }

            if correct {
                route += segment.length;
                at += 1;
                retry = 0;
                continue;
            }

            detours += 1;
            if !segment.wrong_turns.is_empty() {
                let pick = streams.pick(index, retry, segment.wrong_turns.len());
                detour_distance += 2.0 * segment.wrong_turns[pick];
            }
            if retries_used >= swarm.retry_cap {
                success = false;
                break;
            }
            retries_used += 1;
            retry += 1;
        }

        let distance_flown = route + detour_distance;
        let energy = trial_energy(&swarm.power, distance_flown, m, swarm.speed)
            .expect("validated swarm config has a usable power model");
        let outcome = TrialOutcome {
            success,
            segments_attempted: attempts,
            wasted_detours: detours,
            distance_flown,
            detour_distance,
            energy,
            votes: log,
        };
        (outcome, streams)
    }
}

/// Runs a single seeded trial of `swarm` flying the scenario's plan.
pub fn run_trial(
    scenario: &Scenario,
    errors: &ErrorModel,
    swarm: &SwarmConfig,
    rng: RngSpec,
) -> Result<TrialOutcome, SimError> {
    Course::new(scenario)?.run_trial(errors, swarm, rng)
}
