//! Stochastic combinatorial semi-bandits with the CombUCB1 agent.
//!
//! The crate is split by role:
//!
//! * [`problem`]: items, weight vectors, solutions and the linear return;
//! * [`agent`]: UCB computation, statistics updates, initialization and
//!   the per-step protocol;
//! * [`oracles`]: offline maximization over explicit sets, K-path and grid
//!   longest-path feasible sets;
//! * [`envs`]: Bernoulli environments and per-item gap computation;
//! * [`bounds`]: closed-form regret bounds and their constants;
//! * [`harness`]: seeded multi-run simulation, aggregation and CSV output;
//! * [`verify`]: fast self-checks.

pub mod agent;
pub mod bounds;
pub mod envs;
pub mod error;
pub mod harness;
pub mod oracles;
pub mod problem;
pub mod verify;

pub use agent::{compute_ucbs, confidence_radius, init, step, AgentState, Initialization, RegretScorer, StepRecord};
pub use envs::{gap_summary, BernoulliEnv, Environment, GapSummary, GridEnv, KPathEnv};
pub use error::{Error, Result};
pub use harness::{
    compare_to_bound, run_episode, run_many, run_many_with_jobs, AggregateResult, BoundComparison, EnvSpec, Instance,
    RegretTrace, RunConfig,
};
pub use oracles::{ExplicitFeasibleSet, GridSpec, KPathOracle, Oracle};
pub use problem::{return_value, ItemId, Solution, WeightVector};
