//! Straight-flight energy accounting.
//!
//! Flying a distance `d` at constant speed `s` takes `d / s` seconds at power
//! `P(s)`, so `E = P(s) * d / s`. The power curve is a quadratic in speed
//! whose coefficients are configuration; the default is a flat 200 W.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnergyError {
    #[error("speed must be positive and finite, got {0} m/s")]
    InvalidSpeed(f64),
    #[error("distance must be non-negative and finite, got {0} m")]
    InvalidDistance(f64),
    #[error("power model yields non-positive power {power} W at {speed} m/s")]
    NonPositivePower { speed: f64, power: f64 },
}

/// `P(s) = c0 + c1 s + c2 s^2` in watts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PowerModel {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Default for PowerModel {
    fn default() -> Self {
        PowerModel {
            c0: 200.0,
            c1: 0.0,
            c2: 0.0,
        }
    }
}

impl PowerModel {
    pub fn constant(watts: f64) -> Self {
        PowerModel {
            c0: watts,
            c1: 0.0,
            c2: 0.0,
        }
    }

    pub fn power(&self, speed: f64) -> f64 {
        self.c0 + speed * (self.c1 + speed * self.c2)
    }

    /// Checks that the model draws positive power at `speed`.
    pub fn check_speed(&self, speed: f64) -> Result<f64, EnergyError> {
        if !(speed.is_finite() && speed > 0.0) {
            return Err(EnergyError::InvalidSpeed(speed));
        }
        let power = self.power(speed);
        if !(power.is_finite() && power > 0.0) {
            return Err(EnergyError::NonPositivePower { speed, power });
        }
        Ok(power)
    }
}

/// Energy in joules for one vehicle flying `distance` metres at `speed` m/s.
pub fn e_fly(model: &PowerModel, distance: f64, speed: f64) -> Result<f64, EnergyError> {
    let power = model.check_speed(speed)?;
    if !(distance.is_finite() && distance >= 0.0) {
        return Err(EnergyError::InvalidDistance(distance));
    }
    Ok(power * distance / speed)
}

/// Whole-swarm energy: every one of the `m` vehicles flies `distance`.
/// Hovering and vote exchange are not charged.
pub fn trial_energy(
    model: &PowerModel,
    distance: f64,
    swarm_size: u32,
    speed: f64,
) -> Result<f64, EnergyError> {
    Ok(f64::from(swarm_size) * e_fly(model, distance, speed)?)
}
