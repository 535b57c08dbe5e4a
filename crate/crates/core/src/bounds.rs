//! Closed-form regret bounds for CombUCB1 and matching lower bounds.
//!
//! All logarithms are natural. Every upper bound includes the additive term
//! `(π²/3 + 1) K L` covering initialization and confidence-interval
//! failures, so values compare directly with simulated pseudo-regret from
//! step one. The horizon is taken as a real number `n >= 1`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Leading constant of the `K^{4/3}` bound with a uniform gap.
pub const K43_UNIFORM_CONSTANT: f64 = 48.0;
/// Leading constant of the `K^{4/3}` bound with per-item gaps.
pub const K43_PER_ITEM_CONSTANT: f64 = 96.0;
/// Leading constant of the `K` bound with a uniform gap.
pub const K_UNIFORM_CONSTANT: f64 = 267.0;
/// Leading constant of the `K` bound with per-item gaps.
pub const K_PER_ITEM_CONSTANT: f64 = 534.0;
/// Leading constant of the gap-free bound; exceeds `2 sqrt(534)`.
pub const GAP_FREE_CONSTANT: f64 = 47.0;
/// Leading constant of the grid log-term bound.
pub const GRID_CONSTANT: f64 = 4272.0;

/// `(π²/3 + 1) K L`.
pub fn constant_term(max_items: usize, num_items: usize) -> f64 {
    (PI * PI / 3.0 + 1.0) * max_items as f64 * num_items as f64
}

/// Parameters of an `(L, K, Δ)` instance over a horizon `n`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ProblemParams {
    /// `L`.
    pub num_items: usize,
    /// `K`.
    pub max_items: usize,
    /// `n`.
    pub horizon: f64,
    /// Uniform gap of all suboptimal solutions.
    pub delta: Option<f64>,
    /// `Δ_{e,min}` of every suboptimal item.
    pub gaps: Option<Vec<f64>>,
}

impl ProblemParams {
    pub fn new(num_items: usize, max_items: usize, horizon: f64) -> Self {
        ProblemParams {
            num_items,
            max_items,
            horizon,
            delta: None,
            gaps: None,
        }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn with_gaps(mut self, gaps: Vec<f64>) -> Self {
        self.gaps = Some(gaps);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.max_items as f64;
        if self.max_items == 0 || self.max_items > self.num_items {
            return Err(Error::Parameter(format!(
                "need 1 <= K <= L (got K = {}, L = {})",
                self.max_items, self.num_items
            )));
        }
        if !(self.horizon.is_finite() && self.horizon >= 1.0) {
            return Err(Error::Parameter(format!("need n >= 1 (got {})", self.horizon)));
        }
        if let Some(d) = self.delta {
            if !(d > 0.0 && d <= k) {
                return Err(Error::Parameter(format!("gap {d} outside (0, K]")));
            }
        }
        if let Some(gaps) = &self.gaps {
            if let Some(g) = gaps.iter().find(|g| !(**g > 0.0 && **g <= k)) {
                return Err(Error::Parameter(format!("gap {g} outside (0, K]")));
            }
        }
        Ok(())
    }

    fn log_n(&self) -> f64 {
        self.horizon.ln()
    }

    fn constant(&self) -> f64 {
        constant_term(self.max_items, self.num_items)
    }

    fn require_delta(&self) -> Result<f64> {
        self.validate()?;
        self.delta
            .ok_or_else(|| Error::Parameter("this bound needs a uniform gap delta".into()))
    }

    fn require_gaps(&self) -> Result<&[f64]> {
        self.validate()?;
        match &self.gaps {
            Some(g) if !g.is_empty() => Ok(g),
            _ => Err(Error::Parameter(
                "this bound needs a nonempty list of per-item gaps".into(),
            )),
        }
    }

    fn require_kpath(&self) -> Result<()> {
        self.validate()?;
        if self.num_items % self.max_items != 0 {
            return Err(Error::InvalidInstance(format!(
                "K-path needs K | L (got L = {}, K = {})",
                self.num_items, self.max_items
            )));
        }
        Ok(())
    }
}

/// `K^{4/3} L (48 / Δ) ln n + (π²/3 + 1) K L`.
pub fn k43_uniform_gap_bound(p: &ProblemParams) -> Result<f64> {
    let delta = p.require_delta()?;
    let k = p.max_items as f64;
    let leading = k.powf(4.0 / 3.0) * p.num_items as f64 * K43_UNIFORM_CONSTANT / delta;
    Ok(leading * p.log_n() + p.constant())
}

/// `Σ_e K^{4/3} (96 / Δ_{e,min}) ln n + (π²/3 + 1) K L`.
pub fn k43_per_item_bound(p: &ProblemParams) -> Result<f64> {
    let gaps = p.require_gaps()?;
    let k43 = (p.max_items as f64).powf(4.0 / 3.0);
    let sum: f64 = gaps.iter().map(|g| K43_PER_ITEM_CONSTANT / g).sum();
    Ok(k43 * sum * p.log_n() + p.constant())
}

/// `K L (267 / Δ) ln n + (π²/3 + 1) K L`.
pub fn k_uniform_gap_bound(p: &ProblemParams) -> Result<f64> {
    let delta = p.require_delta()?;
    let leading = p.max_items as f64 * p.num_items as f64 * K_UNIFORM_CONSTANT / delta;
    Ok(leading * p.log_n() + p.constant())
}

/// `Σ_e K (534 / Δ_{e,min}) ln n + (π²/3 + 1) K L`.
pub fn k_per_item_bound(p: &ProblemParams) -> Result<f64> {
    let gaps = p.require_gaps()?;
    let sum: f64 = gaps.iter().map(|g| K_PER_ITEM_CONSTANT / g).sum();
    Ok(p.max_items as f64 * sum * p.log_n() + p.constant())
}

/// `47 sqrt(K L n ln n) + (π²/3 + 1) K L`, for `n >= 2`.
pub fn gap_free_bound(p: &ProblemParams) -> Result<f64> {
    p.validate()?;
    if p.horizon < 2.0 {
        return Err(Error::Parameter(format!(
            "gap-free bound needs n >= 2 (got {})",
            p.horizon
        )));
    }
    let kl = p.max_items as f64 * p.num_items as f64;
    Ok(GAP_FREE_CONSTANT * (kl * p.horizon * p.log_n()).sqrt() + p.constant())
}

/// Log-term envelope of the per-item `K` bound on the grid instance:
/// `4272 m² ln n / σ`. The constant term is not included.
pub fn grid_log_term_bound(side: usize, sigma: f64, horizon: f64) -> Result<f64> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::Parameter(format!("need 0 < sigma < 1 (got {sigma})")));
    }
    if !(horizon.is_finite() && horizon >= 1.0) {
        return Err(Error::Parameter(format!("need n >= 1 (got {horizon})")));
    }
    let m = side as f64;
    Ok(GRID_CONSTANT * m * m * horizon.ln() / sigma)
}

/// Asymptotic lower-bound coefficient on the K-path instance:
/// any consistent algorithm has `liminf R(n) / ln n >= (L - K) K / (4 Δ)`.
pub fn gap_lower_bound_coefficient(p: &ProblemParams) -> Result<f64> {
    p.require_kpath()?;
    let delta = p
        .delta
        .ok_or_else(|| Error::Parameter("lower bound needs delta".into()))?;
    let k = p.max_items as f64;
    if !(delta / k > 0.0 && delta / k < 0.5) {
        return Err(Error::InvalidInstance(format!(
            "need 0 < delta / K < 0.5 (got {})",
            delta / k
        )));
    }
    Ok((p.num_items as f64 - k) * k / (4.0 * delta))
}

/// Minimax lower bound on a worst-case K-path instance:
/// `min(sqrt(K L n), K n) / 20`.
pub fn gap_free_lower_bound(p: &ProblemParams) -> Result<f64> {
    p.require_kpath()?;
    let (k, l, n) = (p.max_items as f64, p.num_items as f64, p.horizon);
    Ok((k * l * n).sqrt().min(k * n) / 20.0)
}

/// The gap threshold `sqrt(534 K L ln n / n)` that balances the two halves
/// of the gap-free argument.
pub fn gap_free_epsilon(max_items: usize, num_items: usize, horizon: f64) -> Result<f64> {
    if !(horizon.is_finite() && horizon >= 2.0) {
        return Err(Error::Parameter(format!("need n >= 2 (got {horizon})")));
    }
    let kl = max_items as f64 * num_items as f64;
    Ok((K_PER_ITEM_CONSTANT * kl * horizon.ln() / horizon).sqrt())
}

// ---------------------------------------------------------------------------
// Geometric sequence constant
// ---------------------------------------------------------------------------

/// Geometric sequences `alpha_i = d alpha^i`, `beta_i = beta^i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceParams {
    pub alpha: f64,
    pub beta: f64,
}

/// Value of the sequence constant at given `(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceConstant {
    /// Smallest `d` satisfying the summability condition,
    /// `6 ((1 - β) / (√α - β))²`.
    pub d: f64,
    /// `Σ_i alpha_i / beta_i = d α / (β - α)`.
    pub objective: f64,
    /// Closed form `sqrt(6 / d) (1 - β) / (√α - β)`; equals one at the
    /// chosen `d`.
    pub condition: f64,
}

/// The point reported as the numeric optimum.
pub const REPORTED_OPTIMUM: SequenceParams = SequenceParams {
    alpha: 0.1459,
    beta: 0.2360,
};

impl SequenceParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let p = SequenceParams { alpha, beta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = (self.alpha, self.beta);
        if !(0.0 < a && a < b && b < a.sqrt() && a.sqrt() < 1.0) {
            return Err(Error::Parameter(format!(
                "need 0 < alpha < beta < sqrt(alpha) < 1 (got alpha = {a}, beta = {b})"
            )));
        }
        Ok(())
    }

    pub fn min_d(&self) -> f64 {
        let ratio = (1.0 - self.beta) / (self.alpha.sqrt() - self.beta);
        6.0 * ratio * ratio
    }
}

/// Evaluates the constant `6 ((1 - β)/(√α - β))² α / (β - α)` that
/// multiplies `K L ln n / Δ` in the uniform-gap `K` bound.
pub fn sequence_constant(p: SequenceParams) -> Result<SequenceConstant> {
    p.validate()?;
    let d = p.min_d();
    let objective = d * p.alpha / (p.beta - p.alpha);
    let condition = (6.0 / d).sqrt() * (1.0 - p.beta) / (p.alpha.sqrt() - p.beta);
    Ok(SequenceConstant {
        d,
        objective,
        condition,
    })
}

/// Partial sum `sqrt(6) Σ_{i=1}^{terms} (β^{i-1} - β^i) / sqrt(d α^i)`.
pub fn condition_partial_sum(p: SequenceParams, d: f64, terms: usize) -> Result<f64> {
    p.validate()?;
    if d.is_nan() || d <= 0.0 {
        return Err(Error::Parameter(format!("need d > 0 (got {d})")));
    }
    let mut sum = 0.0;
    let mut beta_prev = 1.0;
    let mut alpha_pow = 1.0;
    for _ in 0..terms {
        let beta_cur = beta_prev * p.beta;
        alpha_pow *= p.alpha;
        sum += (beta_prev - beta_cur) / (d * alpha_pow).sqrt();
        beta_prev = beta_cur;
    }
    Ok(6f64.sqrt() * sum)
}

/// Numerically minimizes the sequence constant over the feasible region by a
/// coarse grid search followed by a shrinking pattern search.
pub fn minimize_sequence_constant() -> (SequenceParams, f64) {
    // (u, v) in (0, 1)^2 maps onto the feasible region:
    // alpha = u, beta = alpha + v (sqrt(alpha) - alpha)
    let eval = |u: f64, v: f64| -> Option<(SequenceParams, f64)> {
        if !(0.0 < u && u < 1.0 && 0.0 < v && v < 1.0) {
            return None;
        }
        let alpha = u;
        let beta = alpha + v * (alpha.sqrt() - alpha);
        let p = SequenceParams::new(alpha, beta).ok()?;
        sequence_constant(p).ok().map(|c| (p, c.objective))
    };

    let grid = 200;
    let mut best = (0.5, 0.5);
    let mut best_value = f64::INFINITY;
    for i in 1..grid {
        for j in 1..grid {
            let (u, v) = (i as f64 / grid as f64, j as f64 / grid as f64);
            if let Some((_, value)) = eval(u, v) {
                if value < best_value {
                    best = (u, v);
                    best_value = value;
                }
            }
        }
    }

    let mut step = 1.0 / grid as f64;
    while step > 1e-12 {
        let mut improved = false;
        for (du, dv) in [
            (1.0, 0.0),
            (-1.0, 0.0),
            (0.0, 1.0),
            (0.0, -1.0),
            (1.0, 1.0),
            (-1.0, -1.0),
            (1.0, -1.0),
            (-1.0, 1.0),
        ] {
            let (u, v) = (best.0 + du * step, best.1 + dv * step);
            if let Some((_, value)) = eval(u, v) {
                if value < best_value {
                    best = (u, v);
                    best_value = value;
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    let (p, value) = eval(best.0, best.1).expect("best point is feasible");
    (p, value)
}
