//! Majority-vote quality amplification for swarms navigating by landmarks.
//!
//! * [`prob`] holds the closed-form error analytics.
//! * [`terrain`] builds landmark graphs, flight plans and scenario files.
//! * [`sim`] runs seeded Monte Carlo trials of a swarm flying a plan.
//! * [`energy`] prices the distance flown.

pub mod energy;
pub mod prob;
pub mod sim;
pub mod terrain;

pub use prob::{Probability, SwarmSize};
