//! Stochastic weight environments and gap computation.
//!
//! Every environment draws Bernoulli weights by comparing one uniform draw
//! per independent component against its mean. The agent never sees an
//! environment's mean vector; only the harness reads it to score regret.

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::oracles::{GridSpec, Oracle};
use crate::problem::{return_value, ItemId, Solution, WeightVector};

/// Two returns closer than this are treated as tied when checking whether
/// the optimal solution is unique.
pub const UNIQUENESS_TOLERANCE: f64 = 1e-12;

/// A sampleable distribution over `[0, 1]^L`.
pub trait Environment: Send + Sync {
    fn num_items(&self) -> usize;

    /// Expected weights `w̄`.
    fn mean_weights(&self) -> &WeightVector;

    /// One i.i.d. realization.
    fn sample(&self, rng: &mut dyn RngCore) -> WeightVector;
}

#[inline]
fn bernoulli(rng: &mut dyn RngCore, mean: f64) -> f64 {
    if rng.random::<f64>() < mean {
        1.0
    } else {
        0.0
    }
}

/// Independent Bernoulli weights with arbitrary means.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliEnv {
    means: WeightVector,
}

impl BernoulliEnv {
    pub fn new(means: Vec<f64>) -> Result<Self> {
        if means.is_empty() {
            return Err(Error::InvalidInstance("mean vector is empty".into()));
        }
        if let Some(i) = means.iter().position(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::InvalidInstance(format!(
                "mean {} of item {i} is outside [0, 1]",
                means[i]
            )));
        }
        Ok(BernoulliEnv { means: means.into() })
    }

    /// Whitespace-separated means, one or more per line.
    pub fn parse_means(text: &str) -> Result<Vec<f64>> {
        let mut means = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.starts_with('#') {
                continue;
            }
            for tok in line.split_whitespace() {
                means.push(tok.parse::<f64>().map_err(|e| Error::Parse {
                    line: i + 1,
                    message: format!("`{tok}`: {e}"),
                })?);
            }
        }
        Ok(means)
    }
}

impl Environment for BernoulliEnv {
    fn num_items(&self) -> usize {
        self.means.len()
    }

    fn mean_weights(&self) -> &WeightVector {
        &self.means
    }

    fn sample(&self, rng: &mut dyn RngCore) -> WeightVector {
        self.means.iter().map(|&p| bernoulli(rng, p)).collect::<Vec<_>>().into()
    }
}

/// The K-path instance: `L / K` disjoint paths of `K` items. All items of a
/// path share one Bernoulli draw; distinct paths are independent. Items of
/// the first path have mean `0.5`, all others `0.5 - delta / K`.
#[derive(Debug, Clone, PartialEq)]
pub struct KPathEnv {
    path_len: usize,
    delta: f64,
    means: WeightVector,
}

impl KPathEnv {
    pub fn new(num_items: usize, path_len: usize, delta: f64) -> Result<Self> {
        if path_len == 0 || num_items == 0 || num_items % path_len != 0 {
            return Err(Error::InvalidInstance(format!(
                "K-path needs K >= 1 dividing L (got L = {num_items}, K = {path_len})"
            )));
        }
        let per_item = delta / path_len as f64;
        if !(per_item > 0.0 && per_item < 0.5) {
            return Err(Error::InvalidInstance(format!(
                "K-path needs 0 < delta / K < 0.5 (got delta = {delta}, K = {path_len})"
            )));
        }
        let means = (0..num_items)
            .map(|e| if e < path_len { 0.5 } else { 0.5 - per_item })
            .collect::<Vec<_>>();
        Ok(KPathEnv {
            path_len,
            delta,
            means: means.into(),
        })
    }

    pub fn path_len(&self) -> usize {
        self.path_len
    }

    pub fn num_paths(&self) -> usize {
        self.means.len() / self.path_len
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

impl Environment for KPathEnv {
    fn num_items(&self) -> usize {
        self.means.len()
    }

    fn mean_weights(&self) -> &WeightVector {
        &self.means
    }

    fn sample(&self, rng: &mut dyn RngCore) -> WeightVector {
        let mut w = Vec::with_capacity(self.means.len());
        for j in 0..self.num_paths() {
            let value = bernoulli(rng, self.means[j * self.path_len]);
            w.extend(std::iter::repeat(value).take(self.path_len));
        }
        w.into()
    }
}

/// The grid longest-path instance: independent Bernoulli edges with mean
/// `0.5 + sigma / 2` on the left column and bottom row, `0.5 - sigma / 2`
/// elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct GridEnv {
    grid: GridSpec,
    sigma: f64,
    means: WeightVector,
}

impl GridEnv {
    pub fn new(side: usize, sigma: f64) -> Result<Self> {
        let grid = GridSpec::new(side)?;
        if !(sigma > 0.0 && sigma < 1.0) {
            return Err(Error::InvalidInstance(format!(
                "grid needs 0 < sigma < 1 (got {sigma})"
            )));
        }
        Ok(Self::with_means(grid, sigma))
    }

    /// Like [`GridEnv::new`] but admits the degenerate `sigma` in `[0, 1]`,
    /// which makes sampling deterministic at the endpoints.
    pub fn new_unchecked_sigma(side: usize, sigma: f64) -> Result<Self> {
        let grid = GridSpec::new(side)?;
        if !(0.0..=1.0).contains(&sigma) {
            return Err(Error::InvalidInstance(format!("sigma {sigma} outside [0, 1]")));
        }
        Ok(Self::with_means(grid, sigma))
    }

    fn with_means(grid: GridSpec, sigma: f64) -> Self {
        let means = (0..grid.num_edges())
            .map(|e| {
                if grid.is_left_or_bottom(ItemId(e)) {
                    0.5 + sigma / 2.0
                } else {
                    0.5 - sigma / 2.0
                }
            })
            .collect::<Vec<_>>();
        GridEnv {
            grid,
            sigma,
            means: means.into(),
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

impl Environment for GridEnv {
    fn num_items(&self) -> usize {
        self.means.len()
    }

    fn mean_weights(&self) -> &WeightVector {
        &self.means
    }

    fn sample(&self, rng: &mut dyn RngCore) -> WeightVector {
        self.means.iter().map(|&p| bernoulli(rng, p)).collect::<Vec<_>>().into()
    }
}

/// The optimal solution under the mean weights and the per-item minimum
/// gaps `Δ_{e,min}` of suboptimal items.
#[derive(Debug, Clone, PartialEq)]
pub struct GapSummary {
    pub optimal: Solution,
    pub optimal_value: f64,
    /// `Some(gap)` for items outside the optimal solution that lie in some
    /// strictly worse solution; `None` for optimal items and for items whose
    /// best solution ties the optimum.
    pub per_item_min_gap: Vec<Option<f64>>,
    /// False when another feasible solution attains the optimal value within
    /// [`UNIQUENESS_TOLERANCE`].
    pub unique_optimum: bool,
}

impl GapSummary {
    /// Gaps of all suboptimal items, in item order.
    pub fn suboptimal_gaps(&self) -> Vec<f64> {
        self.per_item_min_gap.iter().flatten().copied().collect()
    }

    pub fn min_gap(&self) -> Option<f64> {
        self.per_item_min_gap.iter().flatten().copied().reduce(f64::min)
    }

    pub fn max_gap(&self) -> Option<f64> {
        self.per_item_min_gap.iter().flatten().copied().reduce(f64::max)
    }
}

/// Optimal solution under `w̄` and, for every item outside it, the gap
/// between the optimum and the best feasible solution containing the item.
pub fn gap_summary(env: &dyn Environment, oracle: &dyn Oracle) -> Result<GapSummary> {
    let mean = env.mean_weights();
    if oracle.ground_size() != env.num_items() {
        return Err(Error::Dimension {
            expected: oracle.ground_size(),
            actual: env.num_items(),
        });
    }
    let optimal = oracle.maximize(mean)?;
    let optimal_value = return_value(&optimal, mean)?;
    let mut unique_optimum = true;
    let mut per_item_min_gap = vec![None; env.num_items()];
    for (e, slot) in per_item_min_gap.iter_mut().enumerate() {
        let item = ItemId(e);
        if optimal.contains(item) {
            continue;
        }
        if let Some(best) = oracle.best_value_containing(mean, item)? {
            let gap = optimal_value - best;
            if gap <= UNIQUENESS_TOLERANCE {
                unique_optimum = false;
            } else {
                *slot = Some(gap);
            }
        }
    }
    // A second optimum may also be a strict subset of the first; only an
    // explicit listing can reveal that.
    if unique_optimum {
        if let Some(all) = oracle.enumerate() {
            unique_optimum = !all.iter().any(|a| {
                a != &optimal && return_value(a, mean).is_ok_and(|v| (optimal_value - v).abs() <= UNIQUENESS_TOLERANCE)
            });
        }
    }
    Ok(GapSummary {
        optimal,
        optimal_value,
        per_item_min_gap,
        unique_optimum,
    })
}
