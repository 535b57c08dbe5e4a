//! Ground items, weight vectors, solutions and the linear return function.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Zero-based index of a ground item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemId(pub usize);

impl ItemId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for ItemId {
    fn from(index: usize) -> Self {
        ItemId(index)
    }
}

/// One weight per ground item.
///
/// The same type carries sampled observations (entries in `[0, 1]`), the
/// mean vector of an environment, and oracle inputs such as UCBs, which may
/// exceed one but are always finite and nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(values: Vec<f64>) -> Self {
        WeightVector(values)
    }

    pub fn filled(len: usize, value: f64) -> Self {
        WeightVector(vec![value; len])
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn get(&self, item: ItemId) -> Option<f64> {
        self.0.get(item.0).copied()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        WeightVector(self.0.iter().map(|w| w * factor).collect())
    }

    pub fn check_len(&self, expected: usize) -> Result<()> {
        if self.0.len() != expected {
            return Err(Error::Dimension {
                expected,
                actual: self.0.len(),
            });
        }
        Ok(())
    }

    /// Checks that the vector is a valid realization of the weight
    /// distribution: every entry in `[0, 1]`.
    pub fn check_observation(&self) -> Result<()> {
        match self.0.iter().position(|w| !(0.0..=1.0).contains(w)) {
            Some(item) => Err(Error::InvalidObservation {
                item,
                value: self.0[item],
            }),
            None => Ok(()),
        }
    }

    /// Checks that the vector is admissible oracle input: finite and
    /// nonnegative entries of the expected length.
    pub fn check_oracle_input(&self, expected: usize) -> Result<()> {
        self.check_len(expected)?;
        match self.0.iter().position(|w| !w.is_finite() || *w < 0.0) {
            Some(i) => Err(Error::InvalidWeights(format!(
                "entry {i} is {} (must be finite and >= 0)",
                self.0[i]
            ))),
            None => Ok(()),
        }
    }
}

impl Deref for WeightVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for WeightVector {
    fn from(values: Vec<f64>) -> Self {
        WeightVector(values)
    }
}

/// A subset of ground items, stored as a strictly increasing list.
///
/// Feasibility (membership in the feasible set) is certified by the oracle
/// that produced the solution, not by this type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Solution(Vec<ItemId>);

impl Solution {
    pub fn empty() -> Self {
        Solution(Vec::new())
    }

    /// Builds a solution from arbitrary-order item indices.
    ///
    /// Duplicate items are rejected.
    pub fn from_indices<I>(indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut items: Vec<ItemId> = indices.into_iter().map(ItemId).collect();
        items.sort_unstable();
        if let Some(pair) = items.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::InvalidSolution(format!(
                "item {} appears more than once",
                pair[0]
            )));
        }
        Ok(Solution(items))
    }

    pub fn items(&self) -> &[ItemId] {
        &self.0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|e| e.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    /// Largest item index, if any.
    pub fn max_item(&self) -> Option<ItemId> {
        self.0.last().copied()
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Return of `solution` under `weights`: the sum of the weights of its
/// items, accumulated in ascending item order.
pub fn return_value(solution: &Solution, weights: &WeightVector) -> Result<f64> {
    if let Some(max) = solution.max_item() {
        if max.0 >= weights.len() {
            return Err(Error::InvalidSolution(format!(
                "item {max} is out of range for {} weights",
                weights.len()
            )));
        }
    }
    Ok(solution.indices().map(|e| weights[e]).sum())
}

/// [`return_value`] without bounds checking beyond slice indexing; callers
/// guarantee the solution indexes into `weights`.
#[inline]
pub(crate) fn return_unchecked(solution: &Solution, weights: &[f64]) -> f64 {
    solution.indices().map(|e| weights[e]).sum()
}
