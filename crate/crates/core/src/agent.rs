//! The CombUCB1 agent.
//!
//! At step `t` the agent scores every item by its empirical mean plus the
//! confidence radius `c_{t-1, T(e)} = sqrt(1.5 ln(t - 1) / T(e))`, asks the
//! oracle for the best solution under those scores, and updates the running
//! means of the items it observes. Scores are not clipped to `[0, 1]`.

use rand::RngCore;

use crate::envs::Environment;
use crate::error::{Error, Result};
use crate::oracles::Oracle;
use crate::problem::{return_unchecked, return_value, Solution, WeightVector};

/// `sqrt(1.5 ln t / s)` with the natural logarithm.
pub fn confidence_radius(t: u64, s: u64) -> Result<f64> {
    if s == 0 {
        return Err(Error::ZeroObservations);
    }
    if t == 0 {
        return Err(Error::Parameter("confidence radius needs t >= 1".into()));
    }
    Ok((1.5 * (t as f64).ln() / s as f64).sqrt())
}

/// Observation counts, running means and the index of the next step.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentState {
    counts: Vec<u64>,
    means: Vec<f64>,
    step: u64,
}

impl AgentState {
    pub fn from_parts(counts: Vec<u64>, means: Vec<f64>, step: u64) -> Result<Self> {
        if counts.len() != means.len() {
            return Err(Error::Dimension {
                expected: counts.len(),
                actual: means.len(),
            });
        }
        if step == 0 {
            return Err(Error::Parameter("step index starts at 1".into()));
        }
        if let Some(item) = means.iter().position(|m| !(0.0..=1.0).contains(m)) {
            return Err(Error::InvalidObservation {
                item,
                value: means[item],
            });
        }
        Ok(AgentState { counts, means, step })
    }

    pub fn num_items(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    /// Index `t` of the step about to be played.
    pub fn step(&self) -> u64 {
        self.step
    }

    /// UCBs `U_t(e) = ŵ(e) + c_{t-1, T(e)}` for the step about to be played.
    pub fn ucbs(&self) -> Result<WeightVector> {
        if self.step < 2 {
            return Err(Error::Parameter(format!(
                "UCBs need step >= 2, agent is at step {}",
                self.step
            )));
        }
        let log_t = ((self.step - 1) as f64).ln();
        self.counts
            .iter()
            .zip(&self.means)
            .enumerate()
            .map(|(e, (&count, &mean))| {
                if count == 0 {
                    return Err(Error::Uninitialized(e));
                }
                Ok(mean + (1.5 * log_t / count as f64).sqrt())
            })
            .collect::<Result<Vec<_>>>()
            .map(WeightVector::new)
    }

    /// Credits the observed weights of the chosen items and advances the
    /// step counter. Entries of `observed` outside `chosen` are ignored.
    /// Nothing is modified when an error is returned.
    pub fn update(&mut self, chosen: &Solution, observed: &WeightVector) -> Result<()> {
        observed.check_len(self.counts.len())?;
        for e in chosen.indices() {
            if e >= self.counts.len() {
                return Err(Error::InvalidSolution(format!(
                    "item {e} is out of range for {} items",
                    self.counts.len()
                )));
            }
            if self.counts[e] == 0 {
                return Err(Error::Uninitialized(e));
            }
            if !(0.0..=1.0).contains(&observed[e]) {
                return Err(Error::InvalidObservation {
                    item: e,
                    value: observed[e],
                });
            }
        }
        for e in chosen.indices() {
            let old = self.counts[e];
            let new = old + 1;
            self.means[e] = (old as f64 * self.means[e] + observed[e]) / new as f64;
            self.counts[e] = new;
        }
        self.step += 1;
        Ok(())
    }
}

/// Free-function form of [`AgentState::ucbs`].
pub fn compute_ucbs(state: &AgentState) -> Result<WeightVector> {
    state.ucbs()
}

/// Outcome of the initialization procedure.
#[derive(Debug, Clone)]
pub struct Initialization {
    pub state: AgentState,
    /// Solution played and weights sampled at each initialization step, in
    /// order. Step `i` of the episode is `plays[i - 1]`.
    pub plays: Vec<(Solution, WeightVector)>,
}

impl Initialization {
    /// First non-initialization step, `t0 = oracle calls + 1`.
    pub fn first_step(&self) -> u64 {
        self.state.step
    }

    pub fn oracle_calls(&self) -> usize {
        self.plays.len()
    }
}

/// Observes every item once by calling the oracle on a 0/1 vector marking
/// the items not yet observed.
///
/// Each chosen item's estimate is overwritten with its latest observation and
/// its mark cleared. Counts end at one for every item. Fails with
/// [`Error::NonCoveringOracle`] if a call observes no unmarked item or the
/// marks are not cleared within `L` calls.
pub fn init(oracle: &dyn Oracle, env: &dyn Environment, rng: &mut dyn RngCore) -> Result<Initialization> {
    let num_items = oracle.ground_size();
    if env.num_items() != num_items {
        return Err(Error::Dimension {
            expected: num_items,
            actual: env.num_items(),
        });
    }
    let mut means = vec![0.0; num_items];
    let mut unobserved = vec![1.0; num_items];
    let mut remaining = num_items;
    let mut plays = Vec::new();
    while remaining > 0 {
        if plays.len() == num_items {
            return Err(Error::NonCoveringOracle {
                calls: plays.len(),
                uncovered: remaining,
            });
        }
        let marks = WeightVector::new(unobserved.clone());
        let chosen = oracle.maximize(&marks)?;
        if return_value(&chosen, &marks)? == 0.0 {
            return Err(Error::NonCoveringOracle {
                calls: plays.len() + 1,
                uncovered: remaining,
            });
        }
        let sample = env.sample(rng);
        for e in chosen.indices() {
            means[e] = sample[e];
            if unobserved[e] == 1.0 {
                unobserved[e] = 0.0;
                remaining -= 1;
            }
        }
        plays.push((chosen, sample));
    }
    let state = AgentState::from_parts(vec![1; num_items], means, plays.len() as u64 + 1)?;
    Ok(Initialization { state, plays })
}

/// Outcome of one played step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub step: u64,
    pub chosen: Solution,
    pub realized_return: f64,
    /// `f(A*, w̄) - f(A_t, w̄)`.
    pub pseudo_regret: f64,
    /// `f(A*, w_t) - f(A_t, w_t)`.
    pub realized_regret: f64,
}

/// Scores played solutions against the optimal one. Held by the harness;
/// the agent never reads it.
#[derive(Debug, Clone)]
pub struct RegretScorer {
    optimal: Solution,
    optimal_mean_value: f64,
    means: WeightVector,
}

impl RegretScorer {
    pub fn new(optimal: Solution, means: WeightVector) -> Result<Self> {
        let optimal_mean_value = return_value(&optimal, &means)?;
        Ok(RegretScorer {
            optimal,
            optimal_mean_value,
            means,
        })
    }

    /// Scorer whose reference solution is the oracle's maximizer of `w̄`.
    pub fn from_env(env: &dyn Environment, oracle: &dyn Oracle) -> Result<Self> {
        let means = env.mean_weights().clone();
        Self::new(oracle.maximize(&means)?, means)
    }

    pub fn optimal(&self) -> &Solution {
        &self.optimal
    }

    pub fn optimal_mean_value(&self) -> f64 {
        self.optimal_mean_value
    }

    pub fn score(&self, step: u64, chosen: &Solution, sample: &WeightVector) -> Result<StepRecord> {
        let mean_value = return_value(chosen, &self.means)?;
        let realized_return = return_value(chosen, sample)?;
        Ok(StepRecord {
            step,
            chosen: chosen.clone(),
            realized_return,
            // the reference maximizes f(., w̄); ties can leave a rounding residue
            pseudo_regret: (self.optimal_mean_value - mean_value).max(0.0),
            realized_regret: return_unchecked(&self.optimal, sample) - realized_return,
        })
    }
}

/// Plays one step: UCBs, oracle call, sampling, scoring and update.
pub fn step(
    state: &mut AgentState,
    oracle: &dyn Oracle,
    env: &dyn Environment,
    scorer: &RegretScorer,
    rng: &mut dyn RngCore,
) -> Result<StepRecord> {
    let ucbs = state.ucbs()?;
    let chosen = oracle.maximize(&ucbs)?;
    let sample = env.sample(rng);
    let record = scorer.score(state.step, &chosen, &sample)?;
    state.update(&chosen, &sample)?;
    Ok(record)
}
