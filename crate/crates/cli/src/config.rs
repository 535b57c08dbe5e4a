//! Experiment configuration files.
//!
//! A config is a flat TOML table:
//!
//! ```toml
//! env = "grid"          # grid | kpath | explicit
//! m = 4
//! sigma = 0.8
//! horizon = 100000
//! runs = 10
//! seed = 0
//! checkpoints = "geometric"   # geometric | linear | [100, 1000, ...]
//! num_checkpoints = 20
//! out_dir = "results"
//! ```
//!
//! `kpath` takes `L`, `K` and `delta`; `explicit` takes `feasible_file` and
//! `means_file`. Relative paths are resolved against the config's directory.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use semibandit_core::envs::BernoulliEnv;
use semibandit_core::harness::{geometric_checkpoints, linear_checkpoints};
use semibandit_core::{EnvSpec, ExplicitFeasibleSet, RunConfig};

pub const SEED_ENV_VAR: &str = "SEMIBANDIT_SEED";
pub const DEFAULT_HORIZON: u64 = 100_000;
pub const DEFAULT_RUNS: usize = 10;
pub const DEFAULT_NUM_CHECKPOINTS: usize = 20;

/// A config problem, located by line when possible.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub path: PathBuf,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "{}:{line}: {}", self.path.display(), self.message),
            None => write!(f, "{}: {}", self.path.display(), self.message),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnvKind {
    Grid,
    Kpath,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum Schedule {
    Named(String),
    List(Vec<u64>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    env: EnvKind,
    m: Option<usize>,
    sigma: Option<f64>,
    #[serde(rename = "L")]
    num_items: Option<usize>,
    #[serde(rename = "K")]
    path_len: Option<usize>,
    delta: Option<f64>,
    feasible_file: Option<PathBuf>,
    means_file: Option<PathBuf>,
    horizon: Option<i64>,
    runs: Option<i64>,
    seed: Option<u64>,
    checkpoints: Option<Schedule>,
    num_checkpoints: Option<usize>,
    out_dir: Option<PathBuf>,
    jobs: Option<usize>,
}

/// A validated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: EnvKind,
    pub run: RunConfig,
    pub out_dir: PathBuf,
    /// Worker threads; 0 means one per core.
    pub jobs: usize,
}

struct Locator<'a> {
    path: &'a Path,
    text: &'a str,
}

impl Locator<'_> {
    /// Line of the first assignment to `key`.
    fn line_of(&self, key: &str) -> Option<usize> {
        self.text
            .lines()
            .position(|l| {
                l.trim_start()
                    .strip_prefix(key)
                    .is_some_and(|rest| rest.trim_start().starts_with('='))
            })
            .map(|i| i + 1)
    }

    fn at(&self, key: &str, message: impl Into<String>) -> ConfigError {
        ConfigError {
            path: self.path.to_path_buf(),
            line: self.line_of(key).or_else(|| self.line_of("env")),
            message: message.into(),
        }
    }

    fn required<T>(&self, value: Option<T>, key: &str, kind: &str) -> Result<T, ConfigError> {
        value.ok_or_else(|| self.at(key, format!("missing required key `{key}` for env = \"{kind}\"")))
    }
}

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|e| ConfigError {
            path: path.to_path_buf(),
            line: None,
            message: format!("cannot read config: {e}"),
        })?;
        let seed_override = match std::env::var(SEED_ENV_VAR) {
            Ok(v) => Some(v.trim().parse::<u64>().map_err(|e| ConfigError {
                path: path.to_path_buf(),
                line: None,
                message: format!("{SEED_ENV_VAR}={v:?} is not a 64-bit unsigned integer: {e}"),
            })?),
            Err(_) => None,
        };
        Self::parse(path, &text, seed_override)
    }

    /// Parses and validates `text`; `path` is used for messages and to
    /// resolve relative paths.
    pub fn parse(path: &Path, text: &str, seed_override: Option<u64>) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError {
            path: path.to_path_buf(),
            line: e.span().map(|s| line_of_offset(text, s.start)),
            message: e.message().trim().to_string(),
        })?;
        let loc = Locator { path, text };
        let base = path.parent().unwrap_or(Path::new("."));

        let env = match raw.env {
            EnvKind::Grid => {
                let side = loc.required(raw.m, "m", "grid")?;
                let sigma = loc.required(raw.sigma, "sigma", "grid")?;
                if side == 0 {
                    return Err(loc.at("m", "m must be >= 1"));
                }
                if !(sigma > 0.0 && sigma < 1.0) {
                    return Err(loc.at("sigma", format!("sigma must lie in (0, 1) (got {sigma})")));
                }
                EnvSpec::Grid { side, sigma }
            }
            EnvKind::Kpath => {
                let num_items = loc.required(raw.num_items, "L", "kpath")?;
                let path_len = loc.required(raw.path_len, "K", "kpath")?;
                let delta = loc.required(raw.delta, "delta", "kpath")?;
                if path_len == 0 || num_items % path_len != 0 {
                    return Err(loc.at(
                        "K",
                        format!("K must be >= 1 and divide L (got L = {num_items}, K = {path_len})"),
                    ));
                }
                let per_item = delta / path_len as f64;
                if !(per_item > 0.0 && per_item < 0.5) {
                    return Err(loc.at("delta", format!("need 0 < delta / K < 0.5 (got {per_item})")));
                }
                EnvSpec::KPath {
                    num_items,
                    path_len,
                    delta,
                }
            }
            EnvKind::Explicit => {
                let feasible_file = resolve(base, &loc.required(raw.feasible_file, "feasible_file", "explicit")?);
                let means_file = resolve(base, &loc.required(raw.means_file, "means_file", "explicit")?);
                let feasible = ExplicitFeasibleSet::load(&feasible_file)
                    .map_err(|e| loc.at("feasible_file", format!("{}: {e}", feasible_file.display())))?;
                let means = fs::read_to_string(&means_file)
                    .map_err(|e| e.to_string())
                    .and_then(|t| BernoulliEnv::parse_means(&t).map_err(|e| e.to_string()))
                    .map_err(|e| loc.at("means_file", format!("{}: {e}", means_file.display())))?;
                EnvSpec::Explicit { feasible, means }
            }
        };

        let horizon = raw.horizon.unwrap_or(DEFAULT_HORIZON as i64);
        if horizon < 1 {
            return Err(loc.at("horizon", format!("horizon must be >= 1 (got {horizon})")));
        }
        let horizon = horizon as u64;
        let runs = raw.runs.unwrap_or(DEFAULT_RUNS as i64);
        if runs < 1 {
            return Err(loc.at("runs", format!("runs must be >= 1 (got {runs})")));
        }
        let count = raw.num_checkpoints.unwrap_or(DEFAULT_NUM_CHECKPOINTS);
        if count == 0 {
            return Err(loc.at("num_checkpoints", "num_checkpoints must be >= 1"));
        }
        let checkpoints = match raw.checkpoints.unwrap_or(Schedule::Named("geometric".into())) {
            Schedule::Named(s) if s == "geometric" => {
                let c = geometric_checkpoints(100, horizon, count);
                if c.is_empty() {
                    vec![horizon]
                } else {
                    c
                }
            }
            Schedule::Named(s) if s == "linear" => linear_checkpoints(horizon, count),
            Schedule::Named(s) => {
                return Err(loc.at(
                    "checkpoints",
                    format!("unknown checkpoint schedule {s:?} (expected \"geometric\", \"linear\" or a list)"),
                ))
            }
            Schedule::List(list) => list,
        };

        let mut run = RunConfig::new(env, horizon, runs as usize, seed_override.or(raw.seed).unwrap_or(0));
        run.checkpoints = checkpoints;
        run.validate().map_err(|e| loc.at("checkpoints", e.to_string()))?;
        run.env.build().map_err(|e| loc.at("env", e.to_string()))?;

        Ok(ExperimentConfig {
            kind: raw.env,
            run,
            out_dir: resolve(base, &raw.out_dir.unwrap_or_else(|| PathBuf::from("."))),
            jobs: raw.jobs.unwrap_or(0),
        })
    }
}
