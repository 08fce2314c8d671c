//! Keyed random streams.
//!
//! Every trial owns the ChaCha8 stream numbered by its trial index under the
//! master seed. Within that stream each `(segment, retry, kind)` triple starts
//! at its own fixed word offset, and vehicle `j` reads the `j`-th 64-bit word
//! pair from there. A draw is therefore a pure function of
//! `(master_seed, trial, segment, retry, kind, vehicle)`: nothing depends on
//! scheduling, and no two keys share words.
//!
//! Offset layout (in 32-bit words, 59 bits used of the 68 ChaCha allows):
//!
//! ```text
//! | segment: 20 | retry: 20 | kind: 2 | slot: 17 |
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub(crate) const SEGMENT_BITS: u32 = 20;
pub(crate) const RETRY_BITS: u32 = 20;
const KIND_BITS: u32 = 2;
const SLOT_BITS: u32 = 17;

/// Most segments a plan may have.
pub const MAX_SEGMENTS: usize = 1 << SEGMENT_BITS;
/// Largest accepted retry cap.
pub const MAX_RETRY_CAP: u32 = (1 << RETRY_BITS) - 1;
/// Largest swarm whose votes fit in one slot (two words per vehicle).
pub const MAX_SWARM: u32 = 1 << (SLOT_BITS - 2);

/// `(master_seed, trial_index)` determines every draw in a trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSpec {
    pub master_seed: u64,
    pub trial_index: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DrawKind {
    Advice = 0,
    Recognition = 1,
    Detour = 2,
}

/// Identity of one random draw, logged when auditing stream usage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DrawKey {
    pub trial: u64,
    pub segment: u32,
    pub retry: u32,
    pub kind: DrawKind,
    pub vehicle: u32,
}

pub(crate) struct TrialStreams {
    rng: ChaCha8Rng,
    trial: u64,
    log: Option<Vec<DrawKey>>,
}

impl TrialStreams {
    pub(crate) fn new(spec: RngSpec, audit: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.master_seed);
        rng.set_stream(spec.trial_index);
        TrialStreams {
            rng,
            trial: spec.trial_index,
            log: audit.then(Vec::new),
        }
    }

    fn seek(&mut self, segment: u32, retry: u32, kind: DrawKind) {
        debug_assert!((segment as usize) < MAX_SEGMENTS && retry <= MAX_RETRY_CAP);
        let key =
            ((u128::from(segment) << RETRY_BITS | u128::from(retry)) << KIND_BITS) | kind as u128;
        self.rng.set_word_pos(key << SLOT_BITS);
    }

    fn note(&mut self, segment: u32, retry: u32, kind: DrawKind, vehicle: u32) {
        if let Some(log) = &mut self.log {
            log.push(DrawKey {
                trial: self.trial,
                segment,
                retry,
                kind,
                vehicle,
            });
        }
    }

    /// Fills `out` with `m` independent Bernoulli(`p_correct`) outcomes.
    pub(crate) fn votes(
        &mut self,
        segment: u32,
        retry: u32,
        kind: DrawKind,
        m: u32,
        p_correct: f64,
        out: &mut Vec<bool>,
    ) {
        debug_assert!(m <= MAX_SWARM);
        self.seek(segment, retry, kind);
        out.clear();
        for vehicle in 0..m {
            self.note(segment, retry, kind, vehicle);
            out.push(self.rng.random::<f64>() < p_correct);
        }
    }

    /// Uniform index in `0..n`, `n > 0`.
    pub(crate) fn pick(&mut self, segment: u32, retry: u32, n: usize) -> usize {
        self.seek(segment, retry, DrawKind::Detour);
        self.note(segment, retry, DrawKind::Detour, 0);
        self.rng.random_range(0..n)
    }

    pub(crate) fn into_log(self) -> Vec<DrawKey> {
        self.log.unwrap_or_default()
    }
}
