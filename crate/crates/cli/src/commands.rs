//! Subcommand implementations. Each returns `Ok` on success; the binary
//! maps errors to exit codes.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use semibandit_core::bounds::{self, ProblemParams};
use semibandit_core::envs::BernoulliEnv;
use semibandit_core::harness::{fmt_float, write_aggregate_csv, write_runs_csv};
use semibandit_core::{
    compare_to_bound, run_many, run_many_with_jobs, verify, AggregateResult, EnvSpec, Instance, RunConfig,
};

use crate::config::ExperimentConfig;
use crate::output::write_atomic;
use crate::{runtime, usage, CliError};

/// Bound used as the envelope in output files: the uniform-gap `K` bound on
/// K-path instances, the per-item-gap `K` bound otherwise.
pub fn envelope(spec: &EnvSpec, instance: &Instance, horizon: f64) -> f64 {
    match spec {
        EnvSpec::KPath {
            num_items,
            path_len,
            delta,
        } => bounds::k_uniform_gap_bound(&ProblemParams::new(*num_items, *path_len, horizon).with_delta(*delta))
            .unwrap_or(f64::INFINITY),
        _ => instance.k_per_item_bound(horizon),
    }
}

fn io_error(path: &Path, e: io::Error) -> CliError {
    CliError::Runtime(format!("{}: {e}", path.display()))
}

fn simulate(cfg: &RunConfig, jobs: usize) -> Result<AggregateResult, CliError> {
    if jobs == 0 {
        run_many(cfg)
    } else {
        run_many_with_jobs(cfg, jobs)
    }
    .map_err(runtime)
}

pub fn cmd_run(config: &Path, out: Option<&Path>, jobs: Option<usize>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let exp = ExperimentConfig::load(config)?;
    let out_dir = out.map(Path::to_path_buf).unwrap_or(exp.out_dir.clone());
    let cfg = &exp.run;
    let instance = cfg.env.build().map_err(usage)?;
    let agg = simulate(cfg, jobs.unwrap_or(exp.jobs))?;
    let cmp = compare_to_bound(&agg, |c| envelope(&cfg.env, &instance, c as f64));

    let runs_path = out_dir.join("runs.csv");
    let agg_path = out_dir.join("aggregate.csv");
    write_atomic(&runs_path, |w| write_runs_csv(w, &agg.traces)).map_err(|e| io_error(&runs_path, e))?;
    write_atomic(&agg_path, |w| write_aggregate_csv(w, &cmp)).map_err(|e| io_error(&agg_path, e))?;

    let last = cmp.rows.last().expect("at least one checkpoint");
    let truncated = agg.traces.iter().filter(|t| t.init_truncated).count();
    let summary = format!(
        "env: {} (L = {}, K = {})\n\
         runs: {}, horizon: {}, master seed: {}\n\
         unique optimum: {}\n\
         final pseudo-regret at step {}: mean {:.3}, std {:.3}\n\
         envelope bound: {:.3} (ratio {:.6}){}\n\
         {}wrote {}\nwrote {}\n",
        cfg.env.describe(),
        instance.num_items(),
        instance.max_items(),
        cfg.num_runs,
        cfg.horizon,
        cfg.master_seed,
        if agg.unique_optimum { "yes" } else { "no (ties)" },
        last.checkpoint,
        last.mean,
        last.std,
        last.bound,
        last.ratio,
        if cmp.any_exceeded() { ", EXCEEDED" } else { "" },
        if truncated > 0 {
            format!("horizon ended during initialization in {truncated} runs\n")
        } else {
            String::new()
        },
        runs_path.display(),
        agg_path.display(),
    );
    stdout.write_all(summary.as_bytes()).map_err(runtime)
}

/// Options shared by the sweep subcommands.
#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub horizon: u64,
    pub runs: usize,
    pub seed: u64,
    pub jobs: usize,
    pub out: Option<PathBuf>,
}

impl SweepOptions {
    fn validate(&self) -> Result<(), CliError> {
        if self.horizon == 0 {
            return Err(CliError::Usage("horizon n must be >= 1".into()));
        }
        if self.runs == 0 {
            return Err(CliError::Usage("runs must be >= 1".into()));
        }
        Ok(())
    }
}

fn run_cells(
    header: &str,
    cells: Vec<(String, EnvSpec)>,
    opts: &SweepOptions,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    opts.validate()?;
    // validate every cell before running any
    let instances = cells
        .iter()
        .map(|(_, spec)| {
            spec.build()
                .map_err(|e| CliError::Usage(format!("{}: {e}", spec.describe())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = format!("{header}\n");
    for ((prefix, spec), instance) in cells.iter().zip(&instances) {
        let mut cfg = RunConfig::new(spec.clone(), opts.horizon, opts.runs, opts.seed);
        cfg.checkpoints = vec![opts.horizon];
        let agg = simulate(&cfg, opts.jobs)?;
        let bound = envelope(spec, instance, opts.horizon as f64);
        csv.push_str(&format!(
            "{prefix},{},{},{}\n",
            fmt_float(agg.final_mean()),
            fmt_float(agg.final_std()),
            fmt_float(bound)
        ));
    }
    match &opts.out {
        Some(path) => write_atomic(path, |w| w.write_all(csv.as_bytes())).map_err(|e| io_error(path, e)),
        None => stdout.write_all(csv.as_bytes()).map_err(runtime),
    }
}

fn nonempty<T>(list: &[T], flag: &str) -> Result<(), CliError> {
    if list.is_empty() {
        Err(CliError::Usage(format!("--{flag} needs at least one value")))
    } else {
        Ok(())
    }
}

pub fn cmd_sweep_grid(
    sides: &[usize],
    sigmas: &[f64],
    opts: &SweepOptions,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    nonempty(sides, "m")?;
    nonempty(sigmas, "sigma")?;
    let mut cells = Vec::new();
    for &side in sides {
        for &sigma in sigmas {
            let l = 2 * side * (side + 1);
            cells.push((format!("{side},{sigma},{l}"), EnvSpec::Grid { side, sigma }));
        }
    }
    run_cells("m,sigma,L,final_mean_regret,final_std,bound", cells, opts, stdout)
}

pub fn cmd_sweep_kpath(
    items: &[usize],
    path_lens: &[usize],
    deltas: &[f64],
    opts: &SweepOptions,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    nonempty(items, "l")?;
    nonempty(path_lens, "k")?;
    nonempty(deltas, "delta")?;
    let mut cells = Vec::new();
    for &num_items in items {
        for &path_len in path_lens {
            for &delta in deltas {
                cells.push((
                    format!("{num_items},{path_len},{delta}"),
                    EnvSpec::KPath {
                        num_items,
                        path_len,
                        delta,
                    },
                ));
            }
        }
    }
    run_cells("L,K,delta,final_mean_regret,final_std,bound", cells, opts, stdout)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Csv,
}

/// One row of the `bounds` table. `value` is `None` when the bound does not
/// apply, with the reason in `note`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundEntry {
    pub name: &'static str,
    pub formula: &'static str,
    pub value: Option<f64>,
    pub note: String,
}

/// Reads per-item gaps, whitespace separated, `#` starts a comment line.
pub fn read_gaps(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    BernoulliEnv::parse_means(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn bound_table(
    k: usize,
    l: usize,
    n: f64,
    delta: Option<f64>,
    gaps: Option<Vec<f64>>,
) -> Result<Vec<BoundEntry>, CliError> {
    if delta.is_none() && gaps.is_none() {
        return Err(CliError::Usage("need --delta or --gaps-file".into()));
    }
    if gaps.as_ref().is_some_and(|g| g.is_empty()) {
        return Err(CliError::Usage("gaps file contains no gaps".into()));
    }
    // the uniform-gap bounds hold with the smallest per-item gap
    let uniform = delta.or_else(|| gaps.as_ref().map(|g| g.iter().cloned().fold(f64::INFINITY, f64::min)));
    let mut p = ProblemParams::new(l, k, n);
    p.delta = uniform;
    p.gaps = gaps.clone();
    p.validate().map_err(usage)?;

    let entry = |name, formula, r: semibandit_core::Result<f64>, note: &str| BoundEntry {
        name,
        formula,
        value: r.as_ref().ok().copied(),
        note: match r {
            Ok(_) => note.to_string(),
            Err(e) => format!("n/a: {e}"),
        },
    };
    let from_min = if delta.is_none() { "delta = min gap" } else { "" };
    let mut rows = vec![
        entry(
            "k43-uniform-gap",
            "K^(4/3) L 48/delta ln n + (pi^2/3 + 1) K L",
            bounds::k43_uniform_gap_bound(&p),
            from_min,
        ),
        entry(
            "k-uniform-gap",
            "K L 267/delta ln n + (pi^2/3 + 1) K L",
            bounds::k_uniform_gap_bound(&p),
            from_min,
        ),
    ];
    if gaps.is_some() {
        rows.push(entry(
            "k43-per-item-gap",
            "sum_e K^(4/3) 96/gap_e ln n + (pi^2/3 + 1) K L",
            bounds::k43_per_item_bound(&p),
            "",
        ));
        rows.push(entry(
            "k-per-item-gap",
            "sum_e K 534/gap_e ln n + (pi^2/3 + 1) K L",
            bounds::k_per_item_bound(&p),
            "",
        ));
    }
    rows.push(entry(
        "gap-free",
        "47 sqrt(K L n ln n) + (pi^2/3 + 1) K L",
        bounds::gap_free_bound(&p),
        "",
    ));
    rows.push(entry(
        "k-path-lower-coefficient",
        "(L - K) K / (4 delta)",
        bounds::gap_lower_bound_coefficient(&p),
        "asymptotic: coefficient of ln n in liminf R(n)",
    ));
    rows.push(entry(
        "k-path-gap-free-lower",
        "min(sqrt(K L n), K n) / 20",
        bounds::gap_free_lower_bound(&p),
        "",
    ));
    rows.push(entry(
        "gap-free-epsilon",
        "sqrt(534 K L ln n / n)",
        bounds::gap_free_epsilon(k, l, n),
        "gap threshold, not a bound",
    ));
    Ok(rows)
}

pub fn cmd_bounds(
    k: usize,
    l: usize,
    n: f64,
    delta: Option<f64>,
    gaps_file: Option<&Path>,
    format: TableFormat,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let gaps = gaps_file.map(read_gaps).transpose()?;
    let rows = bound_table(k, l, n, delta, gaps)?;
    let mut text = String::new();
    match format {
        TableFormat::Csv => {
            text.push_str("bound,value,formula,note\n");
            for r in &rows {
                let value = r.value.map(fmt_float).unwrap_or_default();
                text.push_str(&format!("{},{value},\"{}\",\"{}\"\n", r.name, r.formula, r.note));
            }
        }
        TableFormat::Text => {
            text.push_str(&format!("K = {k}, L = {l}, n = {n}\n"));
            for r in &rows {
                let value = r.value.map(|v| format!("{v:.2}")).unwrap_or_else(|| "-".into());
                text.push_str(&format!("{:<26}{value:>16}  {}", format!("{}:", r.name), r.formula));
                if !r.note.is_empty() {
                    text.push_str(&format!("  [{}]", r.note));
                }
                text.push('\n');
            }
        }
    }
    stdout.write_all(text.as_bytes()).map_err(runtime)
}

pub fn cmd_verify(samples: usize, seed: u64, stdout: &mut dyn Write) -> Result<(), CliError> {
    let checks = verify::run_all(samples, seed);
    let mut text = String::new();
    for c in &checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("[{tag}] {}: {}\n", c.name, c.detail));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    text.push_str(&format!(
        "{} of {} checks passed\n",
        checks.len() - failed,
        checks.len()
    ));
    stdout.write_all(text.as_bytes()).map_err(runtime)?;
    if failed > 0 {
        Err(CliError::Runtime(format!("{failed} checks failed")))
    } else {
        Ok(())
    }
}
