//! Closed-form analytics for majority-vote error amplification.
//!
//! A swarm of `m` vehicles each makes an independent binary decision that is
//! wrong with probability `p`. The swarm adopts the outcome held by at least
//! `ceil(m/2)` vehicles, so for even `m` an exact half-correct split counts as
//! a correct swarm decision.
//!
//! Binomial sums are evaluated term by term in log space. The log binomial
//! coefficient is updated iteratively (`ln C(m, i+1) = ln C(m, i) + ln(m-i) -
//! ln(i+1)`), which keeps every term finite for swarm sizes in the thousands.
//! The error tail and the success tail are summed separately rather than
//! obtained from each other by `1 - x`, so small tails do not lose precision
//! to cancellation. The boundary probabilities 0 and 1 are handled exactly.

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProbError {
    #[error("probability must lie in [0, 1], got {0}")]
    OutOfRange(f64),
    #[error("swarm size must be at least 1")]
    EmptySwarm,
    #[error("fractional gain is undefined for p = 1")]
    CertainError,
    #[error("optimal gain needs a swarm of at least 2, got {0}")]
    SingletonSwarm(u32),
    #[error("normal approximation needs 0 < p < 1, got {0}")]
    DegenerateVariance(f64),
    #[error("gain polynomial is tabulated for 2 <= m <= 7, got {0}")]
    UntabulatedSize(u32),
}

/// A real number in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self, ProbError> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(ProbError::OutOfRange(value))
        }
    }

    /// Clamps into `[0, 1]`; used for results of floating point sums that may
    /// overshoot by an ulp.
    pub(crate) fn saturating(value: f64) -> Self {
        Probability(value.clamp(0.0, 1.0))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn complement(self) -> Probability {
        Probability(1.0 - self.0)
    }
}

impl TryFrom<f64> for Probability {
    type Error = ProbError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Probability::new(value)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Number of vehicles in a swarm, at least one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct SwarmSize(u32);

impl SwarmSize {
    pub fn new(m: u32) -> Result<Self, ProbError> {
        if m == 0 {
            Err(ProbError::EmptySwarm)
        } else {
            Ok(SwarmSize(m))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Smallest group that forms a majority: `ceil(m/2)`.
    #[inline]
    pub fn majority_threshold(self) -> u32 {
        self.0.div_ceil(2)
    }
}

impl TryFrom<u32> for SwarmSize {
    type Error = ProbError;

    fn try_from(m: u32) -> Result<Self, Self::Error> {
        SwarmSize::new(m)
    }
}

impl From<SwarmSize> for u32 {
    fn from(m: SwarmSize) -> u32 {
        m.0
    }
}

impl fmt::Display for SwarmSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Number of segments `k` in a flight path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PathLength(pub u32);

impl PathLength {
    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

/// Maximiser of the fractional gain for a fixed swarm size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GainPoint {
    pub p_star: Probability,
    pub gain: f64,
}

/// `sum_{i in range} C(m, i) a^(i - shift) b^(m - i)` for `0 < a, b`.
fn binomial_sum(m: u32, range: RangeInclusive<u32>, ln_a: f64, ln_b: f64, shift: f64) -> f64 {
    let mut ln_choose = 0.0_f64;
    let mut total = 0.0_f64;
    for i in 0..=m {
        if range.contains(&i) {
            let exponent = ln_choose + (f64::from(i) - shift) * ln_a + f64::from(m - i) * ln_b;
            total += exponent.exp();
        }
        if i < m {
            ln_choose += f64::from(m - i).ln() - f64::from(i + 1).ln();
        }
    }
    total
}

/// Probability that the swarm majority decision is wrong:
/// `p_m = sum_{i < ceil(m/2)} C(m, i) (1-p)^i p^(m-i)`, i.e. fewer than a
/// majority of vehicles decided correctly.
pub fn majority_error(p: Probability, m: SwarmSize) -> Probability {
    let pv = p.value();
    if pv == 0.0 || pv == 1.0 || m.get() == 1 {
        return p;
    }
    let t = m.majority_threshold();
    let tail = binomial_sum(m.get(), 0..=t - 1, (1.0 - pv).ln(), pv.ln(), 0.0);
    Probability::saturating(tail)
}

/// Probability that the swarm majority decision is correct, `1 - p_m`,
/// summed directly over the success tail.
pub fn majority_success(p: Probability, m: SwarmSize) -> Probability {
    let pv = p.value();
    if pv == 0.0 || pv == 1.0 || m.get() == 1 {
        return p.complement();
    }
    let t = m.majority_threshold();
    let tail = binomial_sum(m.get(), t..=m.get(), (1.0 - pv).ln(), pv.ln(), 0.0);
    Probability::saturating(tail)
}

/// Probability that a single vehicle flies all `k` segments correctly:
/// `(1-p)^k (1-q)^k`.
pub fn single_path_success(p: Probability, q: Probability, k: PathLength) -> Probability {
    Probability::saturating(pow_k(1.0 - p.value(), k) * pow_k(1.0 - q.value(), k))
}

/// Swarm analogue of [`single_path_success`]: every segment needs a correct
/// majority advice decision and a correct majority recognition decision.
pub fn swarm_path_success(
    p: Probability,
    q: Probability,
    k: PathLength,
    m: SwarmSize,
) -> Probability {
    let recognition = majority_success(p, m).value();
    let advice = majority_success(q, m).value();
    Probability::saturating(pow_k(recognition, k) * pow_k(advice, k))
}

fn pow_k(x: f64, k: PathLength) -> f64 {
    match i32::try_from(k.get()) {
        Ok(k) => x.powi(k),
        Err(_) => x.powf(f64::from(k.get())),
    }
}

/// Ratio `(1 - p_m) / (1 - p)` by which majority voting improves the
/// probability of a correct decision, evaluated as
/// `sum_{i >= ceil(m/2)} C(m, i) (1-p)^(i-1) p^(m-i)`.
pub fn fractional_gain(p: Probability, m: SwarmSize) -> Result<f64, ProbError> {
    let pv = p.value();
    if pv == 1.0 {
        return Err(ProbError::CertainError);
    }
    if pv == 0.0 || m.get() == 1 {
        return Ok(1.0);
    }
    let t = m.majority_threshold();
    Ok(binomial_sum(
        m.get(),
        t..=m.get(),
        (1.0 - pv).ln(),
        pv.ln(),
        1.0,
    ))
}

/// Upper end of the operating range searched by [`optimal_gain`]. Majority
/// voting only helps for `p < 1/2`, and for even `m` the gain keeps rising
/// past one half because ties are scored as successes.
pub const GAIN_SEARCH_MAX_P: f64 = 0.5;

const GAIN_GRID_STEP: f64 = 1e-4;

/// Error probability in `[0, 1/2]` at which the fractional gain peaks.
///
/// A dense scan at spacing `1e-4` locates the best grid point, then a
/// golden-section search on the two neighbouring cells refines it. No
/// unimodality is assumed over the whole range.
pub fn optimal_gain(m: SwarmSize) -> Result<GainPoint, ProbError> {
    if m.get() < 2 {
        return Err(ProbError::SingletonSwarm(m.get()));
    }
    let gain_at = |p: f64| -> f64 {
        fractional_gain(Probability(p), m).expect("p < 1 inside the search range")
    };

    let steps = (GAIN_SEARCH_MAX_P / GAIN_GRID_STEP).round() as u32;
    let mut best = (0.0, gain_at(0.0));
    for i in 1..=steps {
        let p = (f64::from(i) * GAIN_GRID_STEP).min(GAIN_SEARCH_MAX_P);
        let g = gain_at(p);
        if g > best.1 {
            best = (p, g);
        }
    }

    let lo = (best.0 - GAIN_GRID_STEP).max(0.0);
    let hi = (best.0 + GAIN_GRID_STEP).min(GAIN_SEARCH_MAX_P);
    let refined = golden_section_max(gain_at, lo, hi, 1e-10);
    // Keep the bracket ends in play: the peak may sit on the range boundary.
    for candidate in [refined, lo, hi] {
        let g = gain_at(candidate);
        if g > best.1 {
            best = (candidate, g);
        }
    }

    Ok(GainPoint {
        p_star: Probability(best.0),
        gain: best.1,
    })
}

fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Standard normal CDF, `0.5 * erfc(-x / sqrt 2)`.
///
/// `libm::erfc` is the FreeBSD msun implementation, accurate to within an
/// ulp or so, far inside the `1e-7` absolute error budget.
pub fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Central-limit approximation of `1 - p_m`.
///
/// The number of correct votes `S` is a sum of `m` Bernoulli(`1-p`) trials
/// and the swarm is right when `S >= ceil(m/2)`, so the result is
/// `1 - Phi(a)` with `a = (ceil(m/2) - m(1-p)) / sqrt(m p (1-p))`.
/// No continuity correction is applied; adding one would noticeably tighten
/// the estimate at small `m`.
pub fn normal_approx_majority_success(
    p: Probability,
    m: SwarmSize,
) -> Result<Probability, ProbError> {
    let pv = p.value();
    if pv == 0.0 || pv == 1.0 {
        return Err(ProbError::DegenerateVariance(pv));
    }
    let n = f64::from(m.get());
    let a = (f64::from(m.majority_threshold()) - n * (1.0 - pv)) / (n * pv * (1.0 - pv)).sqrt();
    // 1 - Phi(a) == Phi(-a), evaluated without cancellation.
    Ok(Probability::saturating(standard_normal_cdf(-a)))
}

/// `p_m / p`: the factor by which the majority rule shrinks the error.
pub fn error_reduction(p: Probability, m: SwarmSize) -> Option<f64> {
    (p.value() > 0.0).then(|| majority_error(p, m).value() / p.value())
}

/// Integer-coefficient polynomial in `p` equal to the fractional gain for a
/// small swarm. Coefficients are stored lowest power first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainPolynomial {
    coefficients: Vec<i64>,
}

impl GainPolynomial {
    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn evaluate(&self, p: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * p + c as f64)
    }
}

impl fmt::Display for GainPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (power, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let magnitude = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (power, magnitude) {
                (0, _) => write!(f, "{magnitude}")?,
                (_, 1) => {}
                _ => write!(f, "{magnitude}")?,
            }
            match power {
                0 => {}
                1 => write!(f, "p")?,
                _ => write!(f, "p^{power}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn choose(n: u32, k: u32) -> i64 {
    (0..k).fold(1_i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

/// Expanded fractional-gain polynomial for `2 <= m <= 7`.
pub fn gain_polynomial(m: SwarmSize) -> Result<GainPolynomial, ProbError> {
    let m = m.get();
    if !(2..=7).contains(&m) {
        return Err(ProbError::UntabulatedSize(m));
    }
    let t = m.div_ceil(2);
    let mut coefficients = vec![0_i64; m as usize];
    for i in t..=m {
        let outer = choose(m, i);
        let shift = (m - i) as usize;
        // (1-p)^(i-1) = sum_r (-1)^r C(i-1, r) p^r
        for r in 0..i {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            coefficients[shift + r as usize] += sign * outer * choose(i - 1, r);
        }
    }
    while coefficients.len() > 1 && coefficients.last() == Some(&0) {
        coefficients.pop();
    }
    Ok(GainPolynomial { coefficients })
}
