//! Fast self-checks shared by the `verify` command and the test suites.

use rand::{Rng, RngCore, SeedableRng};

use crate::agent::{confidence_radius, init};
use crate::bounds::{self, REPORTED_OPTIMUM};
use crate::envs::{GridEnv, KPathEnv};
use crate::error::Result;
use crate::harness::SimRng;
use crate::oracles::{grid_enumerate_paths, grid_maximize, GridSpec, KPathOracle, Oracle};
use crate::problem::{return_value, WeightVector};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Check { name, passed, detail }
    }
}

/// Number of random weight vectors (uniform on `[0, 1]^L`) whose grid DP
/// value differs from the brute-force maximum over all paths.
pub fn grid_oracle_mismatches(side: usize, trials: usize, rng: &mut dyn RngCore) -> Result<usize> {
    let grid = GridSpec::new(side)?;
    let paths = grid_enumerate_paths(&grid)?;
    let mut mismatches = 0;
    for _ in 0..trials {
        let w: WeightVector = (0..grid.num_edges())
            .map(|_| rng.random::<f64>())
            .collect::<Vec<_>>()
            .into();
        let dp = return_value(&grid_maximize(&grid, &w)?, &w)?;
        let brute = paths
            .iter()
            .map(|p| return_value(p, &w))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max);
        if (dp - brute).abs() > 1e-12 {
            mismatches += 1;
        }
    }
    Ok(mismatches)
}

/// Monte Carlo estimate of `P(|mean - ŵ_s| >= c_{t,s})` where `ŵ_s` is the
/// average of `s` Bernoulli(`mean`) draws.
pub fn coverage_failure_rate(mean: f64, t: u64, s: u64, samples: usize, rng: &mut dyn RngCore) -> Result<f64> {
    let radius = confidence_radius(t, s)?;
    let mut failures = 0usize;
    for _ in 0..samples {
        let ones = (0..s).filter(|_| rng.random::<f64>() < mean).count();
        let estimate = ones as f64 / s as f64;
        if (mean - estimate).abs() >= radius {
            failures += 1;
        }
    }
    Ok(failures as f64 / samples as f64)
}

/// Acceptance threshold for [`coverage_failure_rate`]: the Hoeffding bound
/// `2 t^-3` plus three Monte Carlo standard errors plus `1e-6`.
pub fn coverage_threshold(t: u64, samples: usize) -> f64 {
    let p = 2.0 * (t as f64).powi(-3);
    p + 3.0 * (p / samples as f64).sqrt() + 1e-6
}

pub fn check_grid_oracle(trials: usize, seed: u64) -> Check {
    let mut rng = SimRng::seed_from_u64(seed);
    let mut total = 0;
    for m in 1..=3 {
        match grid_oracle_mismatches(m, trials, &mut rng) {
            Ok(n) => total += n,
            Err(e) => return Check::new("grid oracle vs enumeration", false, e.to_string()),
        }
    }
    Check::new(
        "grid oracle vs enumeration",
        total == 0,
        format!("m = 1..3, {trials} trials each, {total} mismatches"),
    )
}

pub fn check_sequence_constant() -> Check {
    match bounds::sequence_constant(REPORTED_OPTIMUM) {
        Ok(c) => Check::new(
            "sequence constant",
            c.objective > 265.0 && c.objective < 267.0,
            format!(
                "alpha = {}, beta = {}: objective = {:.4}, d = {:.4}",
                REPORTED_OPTIMUM.alpha, REPORTED_OPTIMUM.beta, c.objective, c.d
            ),
        ),
        Err(e) => Check::new("sequence constant", false, e.to_string()),
    }
}

pub fn check_condition_partial_sum() -> Check {
    let result = bounds::sequence_constant(REPORTED_OPTIMUM)
        .and_then(|c| bounds::condition_partial_sum(REPORTED_OPTIMUM, c.d, 200));
    match result {
        Ok(s) => Check::new(
            "summability condition",
            s <= 1.0 + 1e-9,
            format!("200-term partial sum = {s:.12}"),
        ),
        Err(e) => Check::new("summability condition", false, e.to_string()),
    }
}

pub fn check_gap_free_constant() -> Check {
    let c = 2.0 * bounds::K_PER_ITEM_CONSTANT.sqrt();
    Check::new(
        "gap-free constant",
        c < bounds::GAP_FREE_CONSTANT,
        format!("2 sqrt(534) = {c:.4} < 47"),
    )
}

pub fn check_coverage(samples: usize, seed: u64) -> Check {
    let mut rng = SimRng::seed_from_u64(seed);
    let mut worst = String::new();
    let mut passed = true;
    for t in [10u64, 100] {
        for s in [1u64, 5, 20] {
            let rate = match coverage_failure_rate(0.5, t, s, samples, &mut rng) {
                Ok(r) => r,
                Err(e) => return Check::new("confidence coverage", false, e.to_string()),
            };
            let limit = coverage_threshold(t, samples);
            if rate > limit {
                passed = false;
                worst = format!("t = {t}, s = {s}: rate {rate:e} > {limit:e}");
            }
        }
    }
    if worst.is_empty() {
        worst = format!("(t, s) in {{10, 100}} x {{1, 5, 20}}, {samples} samples each");
    }
    Check::new("confidence coverage", passed, worst)
}

pub fn check_init_contract(seed: u64) -> Check {
    let mut rng = SimRng::seed_from_u64(seed);
    let mut run = || -> Result<Option<String>> {
        for l in [4usize, 8, 12] {
            let env = KPathEnv::new(l, 2, 0.2)?;
            let oracle = KPathOracle::new(l, 2)?;
            let out = init(&oracle, &env, &mut rng)?;
            if out.oracle_calls() > l || out.state.counts().iter().any(|&c| c != 1) {
                return Ok(Some(format!("K-path L = {l}")));
            }
        }
        for m in 1..=3 {
            let env = GridEnv::new(m, 0.5)?;
            let out = init(env.grid(), &env, &mut rng)?;
            if out.oracle_calls() > env.grid().ground_size() || out.state.counts().iter().any(|&c| c != 1) {
                return Ok(Some(format!("grid m = {m}")));
            }
        }
        Ok(None)
    };
    match run() {
        Ok(None) => Check::new(
            "initialization contract",
            true,
            "K-path L in {4, 8, 12}, grid m in {1, 2, 3}".into(),
        ),
        Ok(Some(which)) => Check::new("initialization contract", false, which),
        Err(e) => Check::new("initialization contract", false, e.to_string()),
    }
}

/// Runs every fast check. `coverage_samples` trades runtime for precision.
pub fn run_all(coverage_samples: usize, seed: u64) -> Vec<Check> {
    vec![
        check_grid_oracle(1000, seed),
        check_sequence_constant(),
        check_condition_partial_sum(),
        check_gap_free_constant(),
        check_coverage(coverage_samples, seed.wrapping_add(1)),
        check_init_contract(seed.wrapping_add(2)),
    ]
}
