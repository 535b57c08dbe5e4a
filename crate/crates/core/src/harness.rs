//! Seeded episodes, checkpointed regret traces, aggregation across runs and
//! comparison against bound curves.
//!
//! Run `i` of an experiment with master seed `s` uses the stream
//! `ChaCha8Rng::seed_from_u64(run_seed(s, i))`, where [`run_seed`] is the
//! `(i + 1)`-th output of a SplitMix64 generator started at `s`. Adding runs
//! never changes the streams of existing ones.

use std::io::{self, Write};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::agent::{self, RegretScorer, StepRecord};
use crate::bounds::{self, ProblemParams};
use crate::envs::{gap_summary, BernoulliEnv, Environment, GapSummary, GridEnv, KPathEnv};
use crate::error::{Error, Result};
use crate::oracles::{ExplicitFeasibleSet, KPathOracle, Oracle};

/// The random number generator used for every episode.
pub type SimRng = ChaCha8Rng;

const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of run `run_index` under `master_seed`.
pub fn run_seed(master_seed: u64, run_index: u64) -> u64 {
    splitmix64_mix(master_seed.wrapping_add(SPLITMIX_GAMMA.wrapping_mul(run_index.wrapping_add(1))))
}

/// Which problem to simulate.
#[derive(Debug, Clone, PartialEq)]
pub enum EnvSpec {
    KPath {
        num_items: usize,
        path_len: usize,
        delta: f64,
    },
    Grid {
        side: usize,
        sigma: f64,
    },
    Explicit {
        feasible: ExplicitFeasibleSet,
        means: Vec<f64>,
    },
}

impl EnvSpec {
    pub fn build(&self) -> Result<Instance> {
        let (oracle, env): (Arc<dyn Oracle>, Arc<dyn Environment>) = match self {
            EnvSpec::KPath {
                num_items,
                path_len,
                delta,
            } => (
                Arc::new(KPathOracle::new(*num_items, *path_len)?),
                Arc::new(KPathEnv::new(*num_items, *path_len, *delta)?),
            ),
            EnvSpec::Grid { side, sigma } => {
                let env = GridEnv::new(*side, *sigma)?;
                (Arc::new(*env.grid()), Arc::new(env))
            }
            EnvSpec::Explicit { feasible, means } => {
                let env = BernoulliEnv::new(means.clone())?;
                (Arc::new(feasible.clone()), Arc::new(env))
            }
        };
        Instance::new(oracle, env)
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match self {
            EnvSpec::KPath {
                num_items,
                path_len,
                delta,
            } => format!("kpath L={num_items} K={path_len} delta={delta}"),
            EnvSpec::Grid { side, sigma } => format!("grid m={side} sigma={sigma}"),
            EnvSpec::Explicit { feasible, .. } => format!(
                "explicit L={} K={} |solutions|={}",
                feasible.ground_size(),
                feasible.max_solution_size(),
                feasible.solutions().len()
            ),
        }
    }
}

/// An oracle and environment pair with its optimum and gaps precomputed.
#[derive(Clone)]
pub struct Instance {
    oracle: Arc<dyn Oracle>,
    env: Arc<dyn Environment>,
    scorer: RegretScorer,
    gaps: GapSummary,
}

impl std::fmt::Debug for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Instance")
            .field("num_items", &self.env.num_items())
            .field("gaps", &self.gaps)
            .finish_non_exhaustive()
    }
}

impl Instance {
    pub fn new(oracle: Arc<dyn Oracle>, env: Arc<dyn Environment>) -> Result<Self> {
        let gaps = gap_summary(env.as_ref(), oracle.as_ref())?;
        let scorer = RegretScorer::new(gaps.optimal.clone(), env.mean_weights().clone())?;
        Ok(Instance {
            oracle,
            env,
            scorer,
            gaps,
        })
    }

    pub fn oracle(&self) -> &dyn Oracle {
        self.oracle.as_ref()
    }

    pub fn env(&self) -> &dyn Environment {
        self.env.as_ref()
    }

    pub fn gaps(&self) -> &GapSummary {
        &self.gaps
    }

    pub fn num_items(&self) -> usize {
        self.env.num_items()
    }

    pub fn max_items(&self) -> usize {
        self.oracle.max_solution_size()
    }

    /// Problem parameters at horizon `n` with this instance's true per-item
    /// gaps.
    pub fn params(&self, horizon: f64) -> ProblemParams {
        ProblemParams::new(self.num_items(), self.max_items(), horizon).with_gaps(self.gaps.suboptimal_gaps())
    }

    /// The per-item `K` bound at horizon `n`; infinite when it does not
    /// apply (no suboptimal item).
    pub fn k_per_item_bound(&self, horizon: f64) -> f64 {
        bounds::k_per_item_bound(&self.params(horizon)).unwrap_or(f64::INFINITY)
    }
}

/// Checkpoint schedules.
pub fn geometric_checkpoints(start: u64, horizon: u64, count: usize) -> Vec<u64> {
    let start = start.clamp(1, horizon.max(1));
    let mut out: Vec<u64> = if count <= 1 || start >= horizon {
        vec![horizon]
    } else {
        let ratio = (horizon as f64 / start as f64).powf(1.0 / (count - 1) as f64);
        (0..count)
            .map(|i| ((start as f64) * ratio.powi(i as i32)).round() as u64)
            .collect()
    };
    *out.last_mut().expect("nonempty") = horizon;
    out.dedup();
    out.retain(|&c| c >= 1 && c <= horizon);
    out
}

/// `count` evenly spaced checkpoints ending at the horizon.
pub fn linear_checkpoints(horizon: u64, count: usize) -> Vec<u64> {
    let count = count.max(1) as u64;
    let mut out: Vec<u64> = (1..=count).map(|i| (horizon * i).div_ceil(count)).collect();
    out.dedup();
    out.retain(|&c| c >= 1);
    out
}

/// Default schedule: 20 geometric points from 100 to the horizon.
pub fn default_checkpoints(horizon: u64) -> Vec<u64> {
    geometric_checkpoints(100, horizon, 20)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub env: EnvSpec,
    pub horizon: u64,
    pub num_runs: usize,
    pub master_seed: u64,
    pub checkpoints: Vec<u64>,
}

impl RunConfig {
    pub fn new(env: EnvSpec, horizon: u64, num_runs: usize, master_seed: u64) -> Self {
        RunConfig {
            env,
            horizon,
            num_runs,
            master_seed,
            checkpoints: default_checkpoints(horizon),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::Parameter("horizon n must be >= 1".into()));
        }
        if self.num_runs == 0 {
            return Err(Error::Parameter("number of runs must be >= 1".into()));
        }
        if self.checkpoints.is_empty() {
            return Err(Error::Parameter("checkpoint schedule is empty".into()));
        }
        if self.checkpoints[0] == 0 || self.checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter(
                "checkpoints must be positive and strictly increasing".into(),
            ));
        }
        if *self.checkpoints.last().unwrap() > self.horizon {
            return Err(Error::Parameter("checkpoints must not exceed the horizon".into()));
        }
        Ok(())
    }
}

/// Cumulative regret of one run at each checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretTrace {
    pub run_index: u64,
    pub run_seed: u64,
    pub checkpoints: Vec<u64>,
    pub cumulative_pseudo: Vec<f64>,
    pub cumulative_realized: Vec<f64>,
    /// Steps spent in initialization (may exceed the horizon).
    pub init_steps: u64,
    /// Set when the horizon ended before initialization finished.
    pub init_truncated: bool,
}

struct TraceRecorder<'a> {
    checkpoints: &'a [u64],
    next: usize,
    pseudo: f64,
    realized: f64,
    out_pseudo: Vec<f64>,
    out_realized: Vec<f64>,
}

impl<'a> TraceRecorder<'a> {
    fn new(checkpoints: &'a [u64]) -> Self {
        TraceRecorder {
            checkpoints,
            next: 0,
            pseudo: 0.0,
            realized: 0.0,
            out_pseudo: Vec::with_capacity(checkpoints.len()),
            out_realized: Vec::with_capacity(checkpoints.len()),
        }
    }

    fn record(&mut self, t: u64, rec: &StepRecord) {
        self.pseudo += rec.pseudo_regret;
        self.realized += rec.realized_regret;
        while self.next < self.checkpoints.len() && self.checkpoints[self.next] == t {
            self.out_pseudo.push(self.pseudo);
            self.out_realized.push(self.realized);
            self.next += 1;
        }
    }
}

/// Plays one episode of `cfg.horizon` steps, initialization included.
pub fn run_episode(instance: &Instance, cfg: &RunConfig, run_index: u64) -> Result<RegretTrace> {
    cfg.validate()?;
    let seed = run_seed(cfg.master_seed, run_index);
    let mut rng = SimRng::seed_from_u64(seed);
    let (oracle, env) = (instance.oracle(), instance.env());
    let scorer = &instance.scorer;

    let init = agent::init(oracle, env, &mut rng)?;
    let init_steps = init.oracle_calls() as u64;
    let mut recorder = TraceRecorder::new(&cfg.checkpoints);
    let mut t = 0u64;
    for (chosen, sample) in &init.plays {
        if t == cfg.horizon {
            break;
        }
        t += 1;
        recorder.record(t, &scorer.score(t, chosen, sample)?);
    }
    let mut state = init.state;
    while t < cfg.horizon {
        t += 1;
        let rec = agent::step(&mut state, oracle, env, scorer, &mut rng)?;
        debug_assert_eq!(rec.step, t);
        recorder.record(t, &rec);
    }

    // Truncated initializations may leave trailing checkpoints unrecorded.
    let recorded = recorder.out_pseudo.len();
    Ok(RegretTrace {
        run_index,
        run_seed: seed,
        checkpoints: cfg.checkpoints[..recorded].to_vec(),
        cumulative_pseudo: recorder.out_pseudo,
        cumulative_realized: recorder.out_realized,
        init_steps,
        init_truncated: init_steps > cfg.horizon,
    })
}

/// Per-checkpoint statistics of cumulative pseudo-regret across runs.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateResult {
    pub checkpoints: Vec<u64>,
    pub mean: Vec<f64>,
    /// Sample standard deviation (zero for a single run).
    pub std: Vec<f64>,
    pub num_runs: usize,
    pub traces: Vec<RegretTrace>,
    pub unique_optimum: bool,
}

impl AggregateResult {
    pub fn final_mean(&self) -> f64 {
        *self.mean.last().unwrap_or(&0.0)
    }

    pub fn final_std(&self) -> f64 {
        *self.std.last().unwrap_or(&0.0)
    }

    fn from_traces(traces: Vec<RegretTrace>, unique_optimum: bool) -> Self {
        let checkpoints = traces[0].checkpoints.clone();
        let runs = traces.len();
        let mut mean = vec![0.0; checkpoints.len()];
        let mut std = vec![0.0; checkpoints.len()];
        for (i, (m, s)) in mean.iter_mut().zip(std.iter_mut()).enumerate() {
            let mu = traces.iter().map(|tr| tr.cumulative_pseudo[i]).sum::<f64>() / runs as f64;
            *m = mu;
            if runs > 1 {
                let ss: f64 = traces.iter().map(|tr| (tr.cumulative_pseudo[i] - mu).powi(2)).sum();
                *s = (ss / (runs - 1) as f64).sqrt();
            }
        }
        AggregateResult {
            checkpoints,
            mean,
            std,
            num_runs: runs,
            traces,
            unique_optimum,
        }
    }
}

/// Runs `cfg.num_runs` independent episodes on the global thread pool.
pub fn run_many(cfg: &RunConfig) -> Result<AggregateResult> {
    let instance = cfg.env.build()?;
    run_many_on(&instance, cfg)
}

/// Like [`run_many`] with at most `jobs` worker threads. The result does not
/// depend on `jobs`.
pub fn run_many_with_jobs(cfg: &RunConfig, jobs: usize) -> Result<AggregateResult> {
    let instance = cfg.env.build()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::ResourceLimit(e.to_string()))?;
    pool.install(|| run_many_on(&instance, cfg))
}

/// Runs every episode of `cfg` on a prebuilt instance.
pub fn run_many_on(instance: &Instance, cfg: &RunConfig) -> Result<AggregateResult> {
    cfg.validate()?;
    let mut traces = (0..cfg.num_runs as u64)
        .into_par_iter()
        .map(|i| run_episode(instance, cfg, i))
        .collect::<Result<Vec<_>>>()?;
    // Traces differ in length only when initialization outlasts the horizon.
    let shortest = traces.iter().map(|t| t.checkpoints.len()).min().unwrap_or(0);
    if shortest == 0 {
        return Err(Error::Parameter(
            "horizon ends before the first checkpoint is reached".into(),
        ));
    }
    for t in &mut traces {
        t.checkpoints.truncate(shortest);
        t.cumulative_pseudo.truncate(shortest);
        t.cumulative_realized.truncate(shortest);
    }
    Ok(AggregateResult::from_traces(traces, instance.gaps.unique_optimum))
}

/// One checkpoint of a [`BoundComparison`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub checkpoint: u64,
    pub mean: f64,
    pub std: f64,
    pub bound: f64,
    pub ratio: f64,
    pub exceeds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundComparison {
    pub rows: Vec<BoundRow>,
}

impl BoundComparison {
    pub fn max_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(0.0, f64::max)
    }

    pub fn any_exceeded(&self) -> bool {
        self.rows.iter().any(|r| r.exceeds)
    }
}

/// Ratio of mean pseudo-regret to `bound(checkpoint)` at every checkpoint.
pub fn compare_to_bound(agg: &AggregateResult, bound: impl Fn(u64) -> f64) -> BoundComparison {
    let rows = agg
        .checkpoints
        .iter()
        .zip(agg.mean.iter().zip(&agg.std))
        .map(|(&checkpoint, (&mean, &std))| {
            let b = bound(checkpoint);
            let ratio = if b.is_infinite() {
                0.0
            } else if b == 0.0 {
                if mean == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                mean / b
            };
            BoundRow {
                checkpoint,
                mean,
                std,
                bound: b,
                ratio,
                exceeds: mean > b,
            }
        })
        .collect();
    BoundComparison { rows }
}

/// Formats a float with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// `run,checkpoint,pseudo_regret,realized_regret`, one row per run and
/// checkpoint, runs in index order.
pub fn write_runs_csv(mut out: impl Write, traces: &[RegretTrace]) -> io::Result<()> {
    writeln!(out, "run,checkpoint,pseudo_regret,realized_regret")?;
    for tr in traces {
        for ((c, p), r) in tr
            .checkpoints
            .iter()
            .zip(&tr.cumulative_pseudo)
            .zip(&tr.cumulative_realized)
        {
            writeln!(out, "{},{},{},{}", tr.run_index, c, fmt_float(*p), fmt_float(*r))?;
        }
    }
    Ok(())
}

/// `checkpoint,mean,std,bound,ratio`.
pub fn write_aggregate_csv(mut out: impl Write, comparison: &BoundComparison) -> io::Result<()> {
    writeln!(out, "checkpoint,mean,std,bound,ratio")?;
    for row in &comparison.rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            row.checkpoint,
            fmt_float(row.mean),
            fmt_float(row.std),
            fmt_float(row.bound),
            fmt_float(row.ratio)
        )?;
    }
    Ok(())
}
