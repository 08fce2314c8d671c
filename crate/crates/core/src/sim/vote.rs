use super::{SimError, TiePolicy};

/// Result of pooling one round of per-vehicle interpretations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<T> {
    /// Some value is held by at least `ceil(m/2)` vehicles. When several
    /// values reach the threshold (an even split), the largest group wins,
    /// then the one first reported by the lowest vehicle index, and
    /// `contested` is set.
    Adopted { value: T, contested: bool },
    /// No value reached the threshold; every vehicle keeps its own reading.
    NoMajority,
}

impl<T> Decision<T> {
    pub fn adopted(&self) -> Option<&T> {
        match self {
            Decision::Adopted { value, .. } => Some(value),
            Decision::NoMajority => None,
        }
    }
}

/// Threshold majority over arbitrary labels.
pub fn majority_vote<T: PartialEq + Clone>(votes: &[T]) -> Result<Decision<T>, SimError> {
    if votes.is_empty() {
        return Err(SimError::NoVotes);
    }
    let threshold = votes.len().div_ceil(2);
    // (index of first holder, count), in order of first appearance.
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for (i, v) in votes.iter().enumerate() {
        match groups.iter_mut().find(|(first, _)| votes[*first] == *v) {
            Some((_, count)) => *count += 1,
            None => groups.push((i, 1)),
        }
    }
    let qualifying = groups.iter().filter(|&&(_, c)| c >= threshold).count();
    // max_by_key keeps the last maximum; iterate in reverse so ties go to the
    // earliest group.
    match groups.iter().rev().max_by_key(|&&(_, c)| c) {
        Some(&(first, count)) if count >= threshold => Ok(Decision::Adopted {
            value: votes[first].clone(),
            contested: qualifying > 1,
        }),
        _ => Ok(Decision::NoMajority),
    }
}

/// Algorithm 1 of the navigation scheme: the swarm adopts the landmark
/// recognised by a majority.
pub fn majority_recognition<T: PartialEq + Clone>(votes: &[T]) -> Result<Decision<T>, SimError> {
    majority_vote(votes)
}

/// The swarm follows the advice interpretation shared by a majority.
pub fn majority_advice<T: PartialEq + Clone>(votes: &[T]) -> Result<Decision<T>, SimError> {
    majority_vote(votes)
}

/// Swarm-level correctness of a binary vote (`true` = that vehicle got it
/// right). An exact split is settled by `policy`.
pub fn binary_decision_correct(votes: &[bool], policy: TiePolicy) -> bool {
    match majority_vote(votes) {
        Ok(Decision::Adopted {
            contested: false,
            value,
        }) => value,
        Ok(Decision::Adopted {
            contested: true, ..
        }) => match policy {
            TiePolicy::TieIsSuccess => true,
            // Fragmented swarm: the correct subgroup is not strictly larger.
            TiePolicy::TieIsFragmentation => false,
        },
        Ok(Decision::NoMajority) | Err(_) => false,
    }
}
