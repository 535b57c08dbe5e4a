use proptest::prelude::*;
use semibandit_core::bounds::*;

fn params(k: usize, l: usize, n: f64) -> ProblemParams {
    ProblemParams::new(l, k, n)
}

/// Smallest horizon at which the gap-free epsilon drops to one.
fn epsilon_root(k: usize, l: usize) -> f64 {
    let (mut lo, mut hi) = (3.0f64, 1e9f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gap_free_epsilon(k, l, mid).unwrap() > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

#[test]
fn known_value_k2_l4() {
    let p = params(2, 4, std::f64::consts::E).with_delta(0.5);
    let v = k_uniform_gap_bound(&p).unwrap();
    assert!((v - 4_306.318_945_069_572).abs() < 1e-6, "{v}");
}

#[test]
fn k43_and_k_bounds_cross_near_172() {
    // per-item leading terms are equal when K^{1/3} = 534 / 96
    let crossover = (K_PER_ITEM_CONSTANT / K43_PER_ITEM_CONSTANT).powi(3);
    assert!((crossover - 172.1).abs() < 0.1);
    let at = |k: usize| {
        let p = params(k, 4 * k, 1e6).with_gaps(vec![0.1; 4 * k]);
        (k43_per_item_bound(&p).unwrap(), k_per_item_bound(&p).unwrap())
    };
    let (a, b) = at(170);
    assert!(a < b);
    let (a, b) = at(175);
    assert!(a > b);
}

#[test]
fn epsilon_root_and_balance() {
    // n = 534 ln n
    let root = epsilon_root(1, 1);
    assert!((root - 4490.83).abs() < 0.5, "{root}");
    assert!((gap_free_epsilon(1, 1, root).unwrap() - 1.0).abs() < 1e-9);

    // epsilon minimizes K L 534 ln n / eps + eps n
    let (k, l, n) = (2usize, 4usize, 1e6);
    let eps = gap_free_epsilon(k, l, n).unwrap();
    let g = |e: f64| (k * l) as f64 * K_PER_ITEM_CONSTANT * n.ln() / e + e * n;
    assert!(g(eps) <= g(eps * 0.9));
    assert!(g(eps) <= g(eps * 1.1));
}

#[test]
fn epsilon_vanishes_with_horizon() {
    let values: Vec<f64> = [1e4, 1e6, 1e8, 1e10]
        .iter()
        .map(|&n| gap_free_epsilon(2, 4, n).unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
    assert!(values[3] < 1e-2);
}

#[test]
fn gap_free_bound_grows_like_root_n() {
    let f = |n: f64| gap_free_bound(&params(2, 4, n)).unwrap();
    let ratio = f(4e12) / f(1e12);
    assert!((ratio - 2.0).abs() < 0.05, "{ratio}");
    // ratio to the lower bound grows like sqrt(ln n)
    for n in [1e4, 1e6, 1e8] {
        let p = params(2, 4, n);
        let r = gap_free_bound(&p).unwrap() / gap_free_lower_bound(&p).unwrap();
        assert!(r / n.ln().sqrt() < 20.0 * 47.0 * 1.01);
    }
}

#[test]
fn sequence_constant_minimum() {
    let (p, value) = minimize_sequence_constant();
    assert!((value - 266.164).abs() < 0.1, "{value}");
    assert!((p.alpha - REPORTED_OPTIMUM.alpha).abs() < 0.01);
    assert!((p.beta - REPORTED_OPTIMUM.beta).abs() < 0.01);
}

#[test]
fn invalid_params_are_rejected() {
    assert!(k_uniform_gap_bound(&params(2, 4, 100.0)).is_err());
    assert!(k_uniform_gap_bound(&params(5, 4, 100.0).with_delta(0.1)).is_err());
    assert!(k_per_item_bound(&params(2, 4, 100.0).with_gaps(vec![0.1, 2.5])).is_err());
    assert!(k_per_item_bound(&params(2, 4, 100.0).with_gaps(vec![])).is_err());
    assert!(gap_free_bound(&params(2, 4, 1.5)).is_err());
    assert!(grid_log_term_bound(2, 1.0, 10.0).is_err());
}

proptest! {
    #[test]
    fn bounds_are_monotone(k in 1usize..6, extra in 0usize..20, n in 2.0f64..1e8, delta in 0.01f64..0.6) {
        let l = k + extra;
        let base = params(k, l, n).with_delta(delta).with_gaps(vec![delta; l]);
        let bigger_n = params(k, l, n * 2.0).with_delta(delta).with_gaps(vec![delta; l]);
        let bigger_delta = params(k, l, n).with_delta(delta * 1.5).with_gaps(vec![delta * 1.5; l]);
        let evals: [fn(&ProblemParams) -> semibandit_core::Result<f64>; 4] =
            [k43_uniform_gap_bound, k43_per_item_bound, k_uniform_gap_bound, k_per_item_bound];
        for f in evals {
            prop_assert!(f(&bigger_n).unwrap() > f(&base).unwrap());
            prop_assert!(f(&bigger_delta).unwrap() < f(&base).unwrap());
        }
        prop_assert!(gap_free_bound(&bigger_n).unwrap() > gap_free_bound(&base).unwrap());
    }

    #[test]
    fn lower_coefficient_below_upper(k in 1usize..6, paths in 2usize..10, frac in 0.01f64..0.99) {
        let l = k * paths;
        let delta = frac * 0.5 * k as f64;
        let p = params(k, l, 1e6).with_delta(delta);
        let lower = gap_lower_bound_coefficient(&p).unwrap();
        let upper = (k * l) as f64 * K_UNIFORM_CONSTANT / delta;
        prop_assert!(lower <= upper);
    }
}
