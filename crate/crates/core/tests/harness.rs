use semibandit_core::bounds::{self, ProblemParams};
use semibandit_core::harness::{
    compare_to_bound, geometric_checkpoints, linear_checkpoints, run_many, run_many_with_jobs, write_aggregate_csv,
    write_runs_csv,
};
use semibandit_core::{EnvSpec, RunConfig};

fn kpath(runs: usize, horizon: u64) -> RunConfig {
    let spec = EnvSpec::KPath {
        num_items: 8,
        path_len: 2,
        delta: 0.2,
    };
    let mut cfg = RunConfig::new(spec, horizon, runs, 5);
    cfg.checkpoints = linear_checkpoints(horizon, 10);
    cfg
}

#[test]
fn same_config_same_results() {
    let cfg = kpath(4, 5_000);
    assert_eq!(run_many(&cfg).unwrap(), run_many(&cfg).unwrap());
}

#[test]
fn doubling_runs_keeps_the_first_half() {
    let small = run_many(&kpath(3, 3_000)).unwrap();
    let large = run_many(&kpath(6, 3_000)).unwrap();
    assert_eq!(small.traces[..], large.traces[..3]);
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let cfg = kpath(5, 3_000);
    let one = run_many_with_jobs(&cfg, 1).unwrap();
    let four = run_many_with_jobs(&cfg, 4).unwrap();
    assert_eq!(one, four);
}

#[test]
fn single_run_has_zero_std() {
    let agg = run_many(&kpath(1, 2_000)).unwrap();
    assert!(agg.std.iter().all(|&s| s == 0.0));
    assert_eq!(agg.mean, agg.traces[0].cumulative_pseudo);
}

#[test]
fn traces_are_monotone_and_bounded() {
    let cfg = kpath(4, 5_000);
    let agg = run_many(&cfg).unwrap();
    for trace in &agg.traces {
        assert!(trace.cumulative_pseudo.windows(2).all(|w| w[1] >= w[0]));
        for (&c, &r) in trace.checkpoints.iter().zip(&trace.cumulative_pseudo) {
            assert!(r <= 2.0 * c as f64);
        }
        // each suboptimal play costs exactly delta
        for &r in &trace.cumulative_pseudo {
            let plays = r / 0.2;
            assert!((plays - plays.round()).abs() < 1e-6, "{r}");
        }
    }
}

#[test]
fn grid_regret_stays_below_per_item_bound() {
    let mut cfg = RunConfig::new(EnvSpec::Grid { side: 2, sigma: 0.8 }, 10_000, 10, 11);
    cfg.checkpoints = geometric_checkpoints(100, 10_000, 10);
    let instance = cfg.env.build().unwrap();
    let agg = run_many(&cfg).unwrap();
    let cmp = compare_to_bound(&agg, |c| instance.k_per_item_bound(c as f64));
    assert!(!cmp.any_exceeded());
    assert!(cmp.max_ratio() < 1.0);
}

#[test]
fn kpath_regret_stays_below_uniform_bound() {
    let cfg = kpath(10, 10_000);
    let agg = run_many(&cfg).unwrap();
    let cmp = compare_to_bound(&agg, |c| {
        bounds::k_uniform_gap_bound(&ProblemParams::new(8, 2, c as f64).with_delta(0.2)).unwrap()
    });
    assert!(cmp.max_ratio() < 1.0);
}

#[test]
fn csv_output_is_reproducible() {
    let render = || {
        let agg = run_many(&kpath(3, 2_000)).unwrap();
        let cmp = compare_to_bound(&agg, |c| c as f64);
        let (mut runs, mut aggregate) = (Vec::new(), Vec::new());
        write_runs_csv(&mut runs, &agg.traces).unwrap();
        write_aggregate_csv(&mut aggregate, &cmp).unwrap();
        (runs, aggregate)
    };
    let (runs, aggregate) = render();
    assert_eq!((runs.clone(), aggregate.clone()), render());
    let runs = String::from_utf8(runs).unwrap();
    assert!(runs.starts_with("run,checkpoint,pseudo_regret,realized_regret\n"));
    assert_eq!(runs.lines().count(), 1 + 3 * 10);
    let aggregate = String::from_utf8(aggregate).unwrap();
    assert!(aggregate.starts_with("checkpoint,mean,std,bound,ratio\n"));
}

#[test]
fn horizon_shorter_than_initialization() {
    let mut cfg = RunConfig::new(EnvSpec::Grid { side: 3, sigma: 0.5 }, 2, 2, 1);
    cfg.checkpoints = vec![1, 2];
    let agg = run_many(&cfg).unwrap();
    assert!(agg.traces.iter().all(|t| t.init_truncated));
    assert_eq!(agg.checkpoints, vec![1, 2]);
}
