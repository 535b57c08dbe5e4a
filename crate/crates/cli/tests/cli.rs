use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn semibandit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semibandit"))
        .args(args)
        .current_dir(dir)
        .env_remove("SEMIBANDIT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const GRID: &str = "env = \"grid\"\nm = 2\nsigma = 0.8\nhorizon = 5000\nruns = 3\nout_dir = \"out\"\n";

#[test]
fn run_writes_both_csvs() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("grid.toml"), GRID).unwrap();
    let o = semibandit(&["run", "grid.toml"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let runs = fs::read_to_string(dir.path().join("out/runs.csv")).unwrap();
    let agg = fs::read_to_string(dir.path().join("out/aggregate.csv")).unwrap();
    assert!(runs.starts_with("run,checkpoint,pseudo_regret,realized_regret\n"));
    assert!(agg.starts_with("checkpoint,mean,std,bound,ratio\n"));
    // no temporaries left behind
    assert_eq!(fs::read_dir(dir.path().join("out")).unwrap().count(), 2);
}

#[test]
fn run_is_byte_reproducible_and_job_independent() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("grid.toml"), GRID).unwrap();
    let read = |name: &str| fs::read(dir.path().join(name).join("runs.csv")).unwrap();
    assert!(
        semibandit(&["run", "grid.toml", "--out", "a", "--jobs", "1"], dir.path())
            .status
            .success()
    );
    assert!(
        semibandit(&["run", "grid.toml", "--out", "b", "--jobs", "3"], dir.path())
            .status
            .success()
    );
    assert_eq!(read("a"), read("b"));
}

#[test]
fn seed_env_var_overrides_config() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("grid.toml"), GRID).unwrap();
    let run = |seed: Option<&str>, out: &str| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_semibandit"));
        cmd.args(["run", "grid.toml", "--out", out]).current_dir(dir.path());
        match seed {
            Some(s) => cmd.env("SEMIBANDIT_SEED", s),
            None => cmd.env_remove("SEMIBANDIT_SEED"),
        };
        let o = cmd.output().unwrap();
        assert!(o.status.success());
        (stdout(&o), fs::read(dir.path().join(out).join("runs.csv")).unwrap())
    };
    let (text, base) = run(None, "a");
    assert!(text.contains("master seed: 0"));
    let (text, other) = run(Some("77"), "b");
    assert!(text.contains("master seed: 77"));
    assert_ne!(base, other);
}

#[test]
fn config_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("env = \"grid\"\nm = 2\n", "sigma"),
        ("env = \"grid\"\nm = 2\nsigma = 0.8\nhorizon = 0\n", ":4:"),
        ("env = \"grid\"\nm = 2\nsigma = 0.8\nhorizon = [\n", ":4:"),
        ("env = \"torus\"\n", ":1:"),
    ];
    for (i, (text, needle)) in cases.iter().enumerate() {
        let name = format!("bad{i}.toml");
        fs::write(dir.path().join(&name), text).unwrap();
        let o = semibandit(&["run", &name], dir.path());
        assert_eq!(o.status.code(), Some(2), "case {i}");
        assert!(stderr(&o).contains(needle), "case {i}: {}", stderr(&o));
    }
    let o = semibandit(&["run", "missing.toml"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn explicit_config_with_relative_files() {
    let dir = TempDir::new().unwrap();
    fs::create_dir(dir.path().join("exp")).unwrap();
    fs::write(dir.path().join("exp/theta.txt"), "3 2\n0 1\n1 2\n0 2\n").unwrap();
    fs::write(dir.path().join("exp/means.txt"), "0.9 0.5 0.2\n").unwrap();
    fs::write(
        dir.path().join("exp/run.toml"),
        "env = \"explicit\"\nfeasible_file = \"theta.txt\"\nmeans_file = \"means.txt\"\nhorizon = 2000\nruns = 2\n",
    )
    .unwrap();
    let o = semibandit(&["run", "exp/run.toml"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(dir.path().join("exp/aggregate.csv").exists());
}

#[test]
fn unwritable_output_is_runtime_error() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("grid.toml"), GRID).unwrap();
    fs::write(dir.path().join("blocker"), "").unwrap();
    let o = semibandit(&["run", "grid.toml", "--out", "blocker/sub"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sweep_grid_rows() {
    let dir = TempDir::new().unwrap();
    let o = semibandit(
        &["sweep-grid", "--m", "2", "--sigma", "0.8", "--n", "2000", "--runs", "2"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,sigma,L,final_mean_regret,final_std,bound");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("2,0.8,12,"));
}

#[test]
fn default_sweep_grid_has_nine_rows() {
    let dir = TempDir::new().unwrap();
    let o = semibandit(
        &["sweep-grid", "--n", "300", "--runs", "1", "--out", "sweep.csv"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 9);
    for row in rows {
        let m: usize = row[0].parse().unwrap();
        assert_eq!(row[2].parse::<usize>().unwrap(), 2 * m * (m + 1));
    }
}

#[test]
fn sweep_kpath_rejects_bad_cells() {
    let dir = TempDir::new().unwrap();
    let o = semibandit(&["sweep-kpath", "--l", "8", "--k", "3", "--n", "100"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = semibandit(
        &[
            "sweep-kpath",
            "--l",
            "8,12",
            "--k",
            "2",
            "--delta",
            "0.2",
            "--n",
            "500",
            "--runs",
            "2",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn bounds_table() {
    let dir = TempDir::new().unwrap();
    let o = semibandit(
        &[
            "bounds",
            "--k",
            "2",
            "--l",
            "4",
            "--n",
            "2.718281828459045",
            "--delta",
            "0.5",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("k-uniform-gap:")).unwrap();
    assert!(row.contains("4306.32"), "{row}");
    assert!(text
        .lines()
        .any(|l| l.starts_with("k-path-lower-coefficient:") && l.contains("asymptotic")));

    let o = semibandit(&["bounds", "--k", "2", "--l", "4", "--n", "10"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = semibandit(
        &["bounds", "--k", "2", "--l", "4", "--n", "0.5", "--delta", "0.5"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bounds_with_gaps_file_at_n_one() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("gaps.txt"), "# per-item gaps\n0.5 0.25\n1.0\n").unwrap();
    let o = semibandit(
        &[
            "bounds",
            "--k",
            "2",
            "--l",
            "4",
            "--n",
            "1",
            "--gaps-file",
            "gaps.txt",
            "--format",
            "csv",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let constant = (std::f64::consts::PI.powi(2) / 3.0 + 1.0) * 8.0;
    let upper = ["k43-uniform-gap", "k-uniform-gap", "k43-per-item-gap", "k-per-item-gap"];
    for name in upper {
        let line = text.lines().find(|l| l.starts_with(&format!("{name},"))).unwrap();
        let value: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((value - constant).abs() < 1e-9, "{name}: {value}");
    }
}

#[test]
fn verify_passes() {
    let dir = TempDir::new().unwrap();
    let o = semibandit(&["verify"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("[PASS]")).count() >= 6);
    assert!(!text.contains("[FAIL]"));
}
