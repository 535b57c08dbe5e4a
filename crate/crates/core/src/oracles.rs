//! Offline optimization oracles: `argmax_{A in feasible} f(A, w)` for
//! arbitrary finite nonnegative weights.
//!
//! Every oracle is deterministic. Ties are broken by a fixed rule that is
//! part of each oracle's contract:
//!
//! * explicit feasible sets: lexicographically smallest item sequence;
//! * K-path: smallest path index;
//! * grid: at every node, prefer the down edge when both continuations have
//!   equal best remaining value.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::problem::{return_unchecked, ItemId, Solution, WeightVector};

/// The offline optimization oracle.
pub trait Oracle: Send + Sync {
    /// Number of ground items `L`.
    fn ground_size(&self) -> usize;

    /// Maximum solution cardinality `K`.
    fn max_solution_size(&self) -> usize;

    /// A feasible solution maximizing the return under `weights`.
    fn maximize(&self, weights: &WeightVector) -> Result<Solution>;

    /// Largest return over feasible solutions that contain `item`, or `None`
    /// if no feasible solution contains it.
    fn best_value_containing(&self, weights: &WeightVector, item: ItemId) -> Result<Option<f64>>;

    /// Explicit listing of the feasible set, when the oracle has one cheaply
    /// at hand. Used by validators.
    fn enumerate(&self) -> Option<Vec<Solution>> {
        None
    }
}

fn check_item(item: ItemId, ground_size: usize) -> Result<()> {
    if item.0 >= ground_size {
        return Err(Error::InvalidSolution(format!(
            "item {item} is out of range for {ground_size} items"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Explicit feasible sets
// ---------------------------------------------------------------------------

/// A feasible set given as a list of solutions.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitFeasibleSet {
    ground_size: usize,
    max_size: usize,
    solutions: Vec<Solution>,
}

impl ExplicitFeasibleSet {
    /// Validates that the list is nonempty, that every solution fits in
    /// `ground_size` items and has at most `max_size` of them, and that every
    /// item is covered by some solution.
    pub fn new(ground_size: usize, max_size: usize, solutions: Vec<Solution>) -> Result<Self> {
        if solutions.is_empty() {
            return Err(Error::InvalidInstance("feasible set is empty".into()));
        }
        let mut covered = vec![false; ground_size];
        for (i, a) in solutions.iter().enumerate() {
            if a.len() > max_size {
                return Err(Error::InvalidInstance(format!(
                    "solution {i} has {} items, more than K = {max_size}",
                    a.len()
                )));
            }
            for e in a.items() {
                check_item(*e, ground_size)?;
                covered[e.0] = true;
            }
        }
        if let Some(e) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidInstance(format!(
                "item {e} is not contained in any feasible solution"
            )));
        }
        Ok(ExplicitFeasibleSet {
            ground_size,
            max_size,
            solutions,
        })
    }

    /// All subsets of `{0, .., ground_size - 1}` with exactly `size` items.
    pub fn all_subsets_of_size(ground_size: usize, size: usize) -> Result<Self> {
        let mut solutions = Vec::new();
        let mut current = Vec::with_capacity(size);
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Solution>) {
            if cur.len() == k {
                out.push(Solution::from_indices(cur.iter().copied()).expect("distinct"));
                return;
            }
            for e in start..n {
                cur.push(e);
                rec(e + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, ground_size, size, &mut current, &mut solutions);
        Self::new(ground_size, size, solutions)
    }

    pub fn solutions(&self) -> &[Solution] {
        &self.solutions
    }

    /// Reads the plain-text format: a first line `L K`, then one solution per
    /// line as whitespace-separated item indices. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        fs::read_to_string(path)?.parse()
    }
}

impl FromStr for ExplicitFeasibleSet {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header line `L K`".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: header_line,
                message: format!("expected `L K`, found `{header}`"),
            });
        }
        let parse_dim = |s: &str| {
            s.parse::<usize>().map_err(|e| Error::Parse {
                line: header_line,
                message: format!("`{s}`: {e}"),
            })
        };
        let (ground_size, max_size) = (parse_dim(dims[0])?, parse_dim(dims[1])?);

        let mut solutions = Vec::new();
        for (line, body) in lines {
            let indices = body
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|e| Error::Parse {
                        line,
                        message: format!("`{tok}`: {e}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let a = Solution::from_indices(indices).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            solutions.push(a);
        }
        Self::new(ground_size, max_size, solutions)
    }
}

/// Brute-force oracle over an explicit feasible set. Ties go to the
/// lexicographically smallest item sequence.
pub fn exhaustive_maximize(feasible: &ExplicitFeasibleSet, weights: &WeightVector) -> Result<Solution> {
    weights.check_len(feasible.ground_size)?;
    let mut best: Option<(&Solution, f64)> = None;
    for a in &feasible.solutions {
        let value = return_unchecked(a, weights);
        best = match best {
            Some((b, v)) if v > value || (v == value && b <= a) => Some((b, v)),
            _ => Some((a, value)),
        };
    }
    Ok(best.expect("feasible set is nonempty").0.clone())
}

impl Oracle for ExplicitFeasibleSet {
    fn ground_size(&self) -> usize {
        self.ground_size
    }

    fn max_solution_size(&self) -> usize {
        self.max_size
    }

    fn maximize(&self, weights: &WeightVector) -> Result<Solution> {
        weights.check_oracle_input(self.ground_size)?;
        exhaustive_maximize(self, weights)
    }

    fn best_value_containing(&self, weights: &WeightVector, item: ItemId) -> Result<Option<f64>> {
        weights.check_oracle_input(self.ground_size)?;
        check_item(item, self.ground_size)?;
        Ok(self
            .solutions
            .iter()
            .filter(|a| a.contains(item))
            .map(|a| return_unchecked(a, weights))
            .reduce(f64::max))
    }

    fn enumerate(&self) -> Option<Vec<Solution>> {
        Some(self.solutions.clone())
    }
}

// ---------------------------------------------------------------------------
// K-path
// ---------------------------------------------------------------------------

/// `L / K` disjoint paths; path `j` holds items `jK, .., jK + K - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KPathOracle {
    ground_size: usize,
    path_len: usize,
}

impl KPathOracle {
    pub fn new(ground_size: usize, path_len: usize) -> Result<Self> {
        if path_len == 0 || ground_size == 0 {
            return Err(Error::InvalidInstance("K-path needs L >= 1 and K >= 1".into()));
        }
        if ground_size % path_len != 0 {
            return Err(Error::InvalidInstance(format!(
                "L = {ground_size} is not divisible by K = {path_len}"
            )));
        }
        Ok(KPathOracle { ground_size, path_len })
    }

    pub fn num_paths(&self) -> usize {
        self.ground_size / self.path_len
    }

    pub fn path(&self, index: usize) -> Solution {
        let start = index * self.path_len;
        Solution::from_indices(start..start + self.path_len).expect("contiguous block")
    }

    pub fn path_of(&self, item: ItemId) -> usize {
        item.0 / self.path_len
    }

    fn path_sum(&self, weights: &[f64], index: usize) -> f64 {
        let start = index * self.path_len;
        weights[start..start + self.path_len].iter().sum()
    }

    fn best_path(&self, weights: &[f64]) -> usize {
        let mut best = 0;
        let mut best_value = self.path_sum(weights, 0);
        for j in 1..self.num_paths() {
            let value = self.path_sum(weights, j);
            if value > best_value {
                best = j;
                best_value = value;
            }
        }
        best
    }
}

/// The contiguous block of `K` items with the largest weight sum; ties go to
/// the smallest block index.
pub fn kpath_maximize(ground_size: usize, path_len: usize, weights: &WeightVector) -> Result<Solution> {
    KPathOracle::new(ground_size, path_len)?.maximize(weights)
}

impl Oracle for KPathOracle {
    fn ground_size(&self) -> usize {
        self.ground_size
    }

    fn max_solution_size(&self) -> usize {
        self.path_len
    }

    fn maximize(&self, weights: &WeightVector) -> Result<Solution> {
        weights.check_oracle_input(self.ground_size)?;
        Ok(self.path(self.best_path(weights)))
    }

    fn best_value_containing(&self, weights: &WeightVector, item: ItemId) -> Result<Option<f64>> {
        weights.check_oracle_input(self.ground_size)?;
        check_item(item, self.ground_size)?;
        Ok(Some(self.path_sum(weights, self.path_of(item))))
    }

    fn enumerate(&self) -> Option<Vec<Solution>> {
        Some((0..self.num_paths()).map(|j| self.path(j)).collect())
    }
}

// ---------------------------------------------------------------------------
// Grid longest path
// ---------------------------------------------------------------------------

/// Largest grid side for which [`grid_enumerate_paths`] will enumerate.
pub const MAX_ENUMERATION_SIDE: usize = 12;

/// A `(m + 1) x (m + 1)` node grid with edges pointing right and down.
///
/// Nodes are `(row, col)` with `(0, 0)` the upper-left corner. Edge
/// indexing: the `m (m + 1)` right edges come first in row-major order
/// (`(r, c) -> (r, c + 1)` is `r m + c`), followed by the `m (m + 1)` down
/// edges in row-major order (`(r, c) -> (r + 1, c)` is
/// `m (m + 1) + r (m + 1) + c`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    side: usize,
}

/// Direction of a grid edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Right,
    Down,
}

impl GridSpec {
    pub fn new(side: usize) -> Result<Self> {
        if side == 0 {
            return Err(Error::InvalidInstance("grid needs m >= 1".into()));
        }
        Ok(GridSpec { side })
    }

    /// `m`.
    pub fn side(&self) -> usize {
        self.side
    }

    /// `L = 2 m (m + 1)`.
    pub fn num_edges(&self) -> usize {
        2 * self.side * (self.side + 1)
    }

    /// `K = 2 m`.
    pub fn path_len(&self) -> usize {
        2 * self.side
    }

    fn num_right(&self) -> usize {
        self.side * (self.side + 1)
    }

    pub fn right_edge(&self, row: usize, col: usize) -> ItemId {
        debug_assert!(row <= self.side && col < self.side);
        ItemId(row * self.side + col)
    }

    pub fn down_edge(&self, row: usize, col: usize) -> ItemId {
        debug_assert!(row < self.side && col <= self.side);
        ItemId(self.num_right() + row * (self.side + 1) + col)
    }

    /// Tail node, head node and direction of an edge.
    pub fn endpoints(&self, edge: ItemId) -> ((usize, usize), (usize, usize), Direction) {
        let e = edge.0;
        if e < self.num_right() {
            let (r, c) = (e / self.side, e % self.side);
            ((r, c), (r, c + 1), Direction::Right)
        } else {
            let d = e - self.num_right();
            let (r, c) = (d / (self.side + 1), d % (self.side + 1));
            ((r, c), (r + 1, c), Direction::Down)
        }
    }

    /// Whether the edge lies on the left column or the bottom row.
    pub fn is_left_or_bottom(&self, edge: ItemId) -> bool {
        match self.endpoints(edge) {
            ((_, 0), _, Direction::Down) => true,
            ((r, _), _, Direction::Right) => r == self.side,
            _ => false,
        }
    }

    /// The path straight down the left column, then right along the bottom.
    pub fn left_bottom_path(&self) -> Solution {
        let m = self.side;
        let downs = (0..m).map(|r| self.down_edge(r, 0).0);
        let rights = (0..m).map(|c| self.right_edge(m, c).0);
        Solution::from_indices(downs.chain(rights)).expect("distinct edges")
    }

    fn node(&self, row: usize, col: usize) -> usize {
        row * (self.side + 1) + col
    }

    /// Best value from each node to the bottom-right corner.
    fn suffix_values(&self, w: &[f64]) -> Vec<f64> {
        let m = self.side;
        let mut best = vec![0.0; (m + 1) * (m + 1)];
        for r in (0..=m).rev() {
            for c in (0..=m).rev() {
                if r == m && c == m {
                    continue;
                }
                let down = (r < m).then(|| w[self.down_edge(r, c).0] + best[self.node(r + 1, c)]);
                let right = (c < m).then(|| w[self.right_edge(r, c).0] + best[self.node(r, c + 1)]);
                best[self.node(r, c)] = match (down, right) {
                    (Some(d), Some(x)) => d.max(x),
                    (Some(d), None) => d,
                    (None, Some(x)) => x,
                    (None, None) => unreachable!(),
                };
            }
        }
        best
    }

    /// Best value from the upper-left corner to each node.
    fn prefix_values(&self, w: &[f64]) -> Vec<f64> {
        let m = self.side;
        let mut best = vec![0.0; (m + 1) * (m + 1)];
        for r in 0..=m {
            for c in 0..=m {
                if r == 0 && c == 0 {
                    continue;
                }
                let from_above = (r > 0).then(|| best[self.node(r - 1, c)] + w[self.down_edge(r - 1, c).0]);
                let from_left = (c > 0).then(|| best[self.node(r, c - 1)] + w[self.right_edge(r, c - 1).0]);
                best[self.node(r, c)] = match (from_above, from_left) {
                    (Some(a), Some(l)) => a.max(l),
                    (Some(a), None) => a,
                    (None, Some(l)) => l,
                    (None, None) => unreachable!(),
                };
            }
        }
        best
    }
}

/// Maximum-weight monotone corner-to-corner path by dynamic programming over
/// the grid DAG. At equal best remaining value the down edge is taken.
pub fn grid_maximize(grid: &GridSpec, weights: &WeightVector) -> Result<Solution> {
    weights.check_oracle_input(grid.num_edges())?;
    let m = grid.side;
    let best = grid.suffix_values(weights);
    let mut edges = Vec::with_capacity(grid.path_len());
    let (mut r, mut c) = (0, 0);
    while (r, c) != (m, m) {
        let take_down = if r == m {
            false
        } else if c == m {
            true
        } else {
            let down = weights[grid.down_edge(r, c).0] + best[grid.node(r + 1, c)];
            let right = weights[grid.right_edge(r, c).0] + best[grid.node(r, c + 1)];
            down >= right
        };
        if take_down {
            edges.push(grid.down_edge(r, c).0);
            r += 1;
        } else {
            edges.push(grid.right_edge(r, c).0);
            c += 1;
        }
    }
    Solution::from_indices(edges)
}

/// All `C(2m, m)` monotone corner-to-corner paths, as edge sets.
pub fn grid_enumerate_paths(grid: &GridSpec) -> Result<Vec<Solution>> {
    let m = grid.side;
    if m > MAX_ENUMERATION_SIDE {
        return Err(Error::ResourceLimit(format!(
            "refusing to enumerate paths for m = {m} > {MAX_ENUMERATION_SIDE}"
        )));
    }
    fn walk(grid: &GridSpec, r: usize, c: usize, edges: &mut Vec<usize>, out: &mut Vec<Solution>) {
        let m = grid.side;
        if (r, c) == (m, m) {
            out.push(Solution::from_indices(edges.iter().copied()).expect("distinct edges"));
            return;
        }
        if r < m {
            edges.push(grid.down_edge(r, c).0);
            walk(grid, r + 1, c, edges, out);
            edges.pop();
        }
        if c < m {
            edges.push(grid.right_edge(r, c).0);
            walk(grid, r, c + 1, edges, out);
            edges.pop();
        }
    }
    let mut out = Vec::new();
    walk(grid, 0, 0, &mut Vec::with_capacity(2 * m), &mut out);
    Ok(out)
}

/// Maximum weight over monotone paths that use `edge`: best prefix into the
/// edge's tail, plus the edge, plus best suffix out of its head.
pub fn grid_best_through_edge(grid: &GridSpec, weights: &WeightVector, edge: ItemId) -> Result<f64> {
    weights.check_oracle_input(grid.num_edges())?;
    check_item(edge, grid.num_edges())?;
    let prefix = grid.prefix_values(weights);
    let suffix = grid.suffix_values(weights);
    let ((tr, tc), (hr, hc), _) = grid.endpoints(edge);
    Ok(prefix[grid.node(tr, tc)] + weights[edge.0] + suffix[grid.node(hr, hc)])
}

impl Oracle for GridSpec {
    fn ground_size(&self) -> usize {
        self.num_edges()
    }

    fn max_solution_size(&self) -> usize {
        self.path_len()
    }

    fn maximize(&self, weights: &WeightVector) -> Result<Solution> {
        grid_maximize(self, weights)
    }

    fn best_value_containing(&self, weights: &WeightVector, item: ItemId) -> Result<Option<f64>> {
        grid_best_through_edge(self, weights, item).map(Some)
    }

    fn enumerate(&self) -> Option<Vec<Solution>> {
        if self.side <= 5 {
            grid_enumerate_paths(self).ok()
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::return_value;

    fn singletons() -> ExplicitFeasibleSet {
        ExplicitFeasibleSet::new(
            2,
            1,
            vec![
                Solution::from_indices([0]).unwrap(),
                Solution::from_indices([1]).unwrap(),
            ],
        )
        .unwrap()
    }

    fn sol(items: &[usize]) -> Solution {
        Solution::from_indices(items.iter().copied()).unwrap()
    }

    #[test]
    fn exhaustive_picks_larger_singleton_and_breaks_ties_low() {
        let theta = singletons();
        assert_eq!(exhaustive_maximize(&theta, &vec![0.3, 0.7].into()).unwrap(), sol(&[1]));
        assert_eq!(exhaustive_maximize(&theta, &vec![0.5, 0.5].into()).unwrap(), sol(&[0]));
    }

    #[test]
    fn exhaustive_top_two() {
        let theta = ExplicitFeasibleSet::all_subsets_of_size(4, 2).unwrap();
        assert_eq!(theta.solutions().len(), 6);
        let w = vec![0.1, 0.9, 0.8, 0.2].into();
        assert_eq!(theta.maximize(&w).unwrap(), sol(&[1, 2]));
    }

    #[test]
    fn exhaustive_dimension_error() {
        assert!(matches!(
            exhaustive_maximize(&singletons(), &vec![0.1].into()),
            Err(Error::Dimension { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn explicit_set_validation() {
        assert!(ExplicitFeasibleSet::new(2, 1, vec![]).is_err());
        // item 1 uncovered
        assert!(ExplicitFeasibleSet::new(2, 1, vec![sol(&[0])]).is_err());
        // too large
        assert!(ExplicitFeasibleSet::new(2, 1, vec![sol(&[0, 1])]).is_err());
        // out of range
        assert!(ExplicitFeasibleSet::new(2, 2, vec![sol(&[0, 2])]).is_err());
    }

    #[test]
    fn explicit_set_parses_text_format() {
        let theta: ExplicitFeasibleSet = "# two paths\n4 2\n0 1\n\n3 2\n".parse().unwrap();
        assert_eq!(theta.ground_size(), 4);
        assert_eq!(theta.max_solution_size(), 2);
        assert_eq!(theta.solutions(), &[sol(&[0, 1]), sol(&[2, 3])]);

        let err = "4 2\n0 1\n2 x\n".parse::<ExplicitFeasibleSet>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = "4\n".parse::<ExplicitFeasibleSet>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = "4 2\n1 1\n".parse::<ExplicitFeasibleSet>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn kpath_examples() {
        assert_eq!(
            kpath_maximize(4, 2, &vec![0.5, 0.5, 0.25, 0.25].into()).unwrap(),
            sol(&[0, 1])
        );
        assert_eq!(
            kpath_maximize(4, 2, &vec![0.0, 0.0, 1.0, 1.0].into()).unwrap(),
            sol(&[2, 3])
        );
        assert_eq!(
            kpath_maximize(6, 2, &WeightVector::filled(6, 0.3)).unwrap(),
            sol(&[0, 1])
        );
        assert!(matches!(
            kpath_maximize(5, 2, &WeightVector::filled(5, 0.3)),
            Err(Error::InvalidInstance(_))
        ));
    }

    #[test]
    fn grid_indexing_matches_layout() {
        let g = GridSpec::new(1).unwrap();
        assert_eq!(g.num_edges(), 4);
        // right edges: top, bottom; down edges: left, right column
        assert_eq!(g.right_edge(0, 0), ItemId(0));
        assert_eq!(g.right_edge(1, 0), ItemId(1));
        assert_eq!(g.down_edge(0, 0), ItemId(2));
        assert_eq!(g.down_edge(0, 1), ItemId(3));
        let lb: Vec<bool> = (0..4).map(|e| g.is_left_or_bottom(ItemId(e))).collect();
        assert_eq!(lb, vec![false, true, true, false]);
        assert_eq!(g.left_bottom_path(), sol(&[1, 2]));

        let g = GridSpec::new(3).unwrap();
        for e in 0..g.num_edges() {
            let (tail, head, dir) = g.endpoints(ItemId(e));
            let back = match dir {
                Direction::Right => g.right_edge(tail.0, tail.1),
                Direction::Down => g.down_edge(tail.0, tail.1),
            };
            assert_eq!(back, ItemId(e));
            assert_eq!(head.0 + head.1, tail.0 + tail.1 + 1);
        }
    }

    #[test]
    fn grid_m1_mean_weights_pick_left_bottom() {
        let g = GridSpec::new(1).unwrap();
        // sigma = 0.2: left/bottom edges 0.6, others 0.4
        let w: WeightVector = vec![0.4, 0.6, 0.6, 0.4].into();
        let a = grid_maximize(&g, &w).unwrap();
        assert_eq!(a, g.left_bottom_path());
        assert!((return_value(&a, &w).unwrap() - 1.2).abs() < 1e-12);
    }

    #[test]
    fn grid_ties_prefer_down() {
        let g = GridSpec::new(1).unwrap();
        assert_eq!(
            grid_maximize(&g, &WeightVector::filled(4, 0.5)).unwrap(),
            g.left_bottom_path()
        );
        let g = GridSpec::new(3).unwrap();
        assert_eq!(
            grid_maximize(&g, &WeightVector::filled(g.num_edges(), 1.0)).unwrap(),
            g.left_bottom_path()
        );
    }

    #[test]
    fn grid_path_counts() {
        for (m, count) in [(1, 2), (2, 6), (3, 20)] {
            let paths = grid_enumerate_paths(&GridSpec::new(m).unwrap()).unwrap();
            assert_eq!(paths.len(), count);
            assert!(paths.iter().all(|p| p.len() == 2 * m));
        }
        assert!(matches!(
            grid_enumerate_paths(&GridSpec::new(13).unwrap()),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn best_through_edge_examples() {
        let g = GridSpec::new(1).unwrap();
        let w: WeightVector = vec![0.4, 0.6, 0.6, 0.4].into();
        // top edge lies only on the right-then-down path
        assert!((grid_best_through_edge(&g, &w, g.right_edge(0, 0)).unwrap() - 0.8).abs() < 1e-12);
        assert!((grid_best_through_edge(&g, &w, g.down_edge(0, 0)).unwrap() - 1.2).abs() < 1e-12);

        let g = GridSpec::new(4).unwrap();
        let ones = WeightVector::filled(g.num_edges(), 1.0);
        for e in 0..g.num_edges() {
            assert_eq!(grid_best_through_edge(&g, &ones, ItemId(e)).unwrap(), 8.0);
        }
    }

    #[test]
    fn grid_rejects_bad_weights() {
        let g = GridSpec::new(2).unwrap();
        assert!(matches!(
            grid_maximize(&g, &WeightVector::filled(11, 0.1)),
            Err(Error::Dimension {
                expected: 12,
                actual: 11
            })
        ));
        let mut w = vec![0.1; 12];
        w[3] = -1.0;
        assert!(matches!(grid_maximize(&g, &w.into()), Err(Error::InvalidWeights(_))));
    }
}
