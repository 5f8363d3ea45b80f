use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn proxtr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_proxtr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn list_problems_prints_names_and_dimensions() {
    let o = proxtr(&["--list-problems"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().count() >= 20);
    assert!(text
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["ROSENBR", "2"]));
    assert!(text
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["TRIDIA", "20"]));
}

#[test]
fn solve_converges_and_writes_the_iteration_log() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("rosenbr.csv");
    let o = proxtr(&["solve", "--problem", "rosenbr", "--log", log.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("status     converged"));
    let csv = fs::read_to_string(&log).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "k,F,pi1,delta,rho,step_norm,accepted,inner_iters,backtracks,gamma"
    );
    assert!(csv.lines().count() > 2);
}

#[test]
fn unconverged_solve_exits_with_one() {
    let o = proxtr(&["solve", "--problem", "ROSENBR", "--max-iters", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "tr.delta0 = 1\nppg.alpha = two\n").unwrap();
    let o = proxtr(&["--config", bad.to_str().unwrap(), "solve", "--problem", "ROSENBR"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let missing = dir.path().join("missing.cfg");
    let o = proxtr(&["--config", missing.to_str().unwrap(), "solve", "--problem", "ROSENBR"]);
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(proxtr(&["solve", "--problem", "NOT-A-PROBLEM"]).status.code(), Some(2));
    assert_eq!(proxtr(&["solve"]).status.code(), Some(2));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# tiny budget\ntr.max_iters = 3\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(
        proxtr(&["--config", c, "solve", "--problem", "ROSENBR"]).status.code(),
        Some(1)
    );
    let o = proxtr(&["--config", c, "solve", "--problem", "ROSENBR", "--max-iters", "10000"]);
    assert!(o.status.success());
}

#[test]
fn ball_regularizer_from_config_keeps_iterates_feasible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ball.cfg");
    fs::write(&cfg, "h.kind = ball\nh.radius = 0.5\nh.center = 0\n").unwrap();
    let o = proxtr(&["--config", cfg.to_str().unwrap(), "solve", "--problem", "ROSENBR"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let xline = text.lines().find(|l| l.starts_with('x')).unwrap();
    let inner = xline.split_once('[').unwrap().1.trim_end_matches(']');
    let norm: f64 = inner
        .split(',')
        .map(|v| v.trim().parse::<f64>().unwrap().powi(2))
        .sum::<f64>()
        .sqrt();
    assert!(norm <= 0.5 * (1.0 + 1e-9), "norm {norm}");
}

fn run_small_bench(out: &Path) {
    let o = proxtr(&[
        "bench",
        "--out",
        out.to_str().unwrap(),
        "--jobs",
        "3",
        "--solvers",
        "1,15",
        "--max-iters",
        "50",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn bench_writes_tables_profiles_and_plots_deterministically() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_small_bench(a.path());
    run_small_bench(b.path());
    for name in [
        "ktable_tau1e-3.csv",
        "ktable_tau1e-6.csv",
        "profile_data_tau1e-6.csv",
        "profile_perf_tau1e-6.csv",
        "profile_data_tau1e-6.svg",
        "profile_perf_tau1e-3.svg",
        "iters_PPG-N15_ROSENBR.csv",
        "iters_CAUCHY_BEALE.csv",
    ] {
        let x = fs::read(a.path().join(name)).unwrap_or_else(|_| panic!("missing {name}"));
        let y = fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name} differs between runs");
    }
    let ktable = fs::read_to_string(a.path().join("ktable_tau1e-6.csv")).unwrap();
    assert_eq!(ktable.lines().next().unwrap(), "problem,CAUCHY,PPG-N15");
    let svg = fs::read_to_string(a.path().join("profile_data_tau1e-6.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
}

#[test]
fn profiles_subcommand_rebuilds_the_bench_profiles() {
    let bench = tempfile::tempdir().unwrap();
    run_small_bench(bench.path());
    let out = tempfile::tempdir().unwrap();
    let ktable = bench.path().join("ktable_tau1e-6.csv");
    for kind in ["data", "perf"] {
        let o = proxtr(&[
            "profiles",
            "--ktable",
            ktable.to_str().unwrap(),
            "--kind",
            kind,
            "--out",
            out.path().to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(
        fs::read(out.path().join("profile_perf_tau1e-6.csv")).unwrap(),
        fs::read(bench.path().join("profile_perf_tau1e-6.csv")).unwrap()
    );
    let data = fs::read_to_string(out.path().join("profile_data_tau1e-6.csv")).unwrap();
    assert_eq!(data.lines().next().unwrap(), "alpha,CAUCHY,PPG-N15");
    assert!(out.path().join("profile_data_tau1e-6.svg").exists());
}

#[test]
fn profiles_needs_a_tau() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.csv");
    fs::write(&table, "problem,A,B\nP1,1,2\n").unwrap();
    let t = table.to_str().unwrap();
    assert_eq!(
        proxtr(&["profiles", "--ktable", t, "--kind", "data"]).status.code(),
        Some(2)
    );
    let o = proxtr(&["profiles", "--ktable", t, "--kind", "perf", "--tau", "1e-3"]);
    assert!(o.status.success());
    let perf = fs::read_to_string(dir.path().join("profile_perf_tau1e-3.csv")).unwrap();
    let first = perf.lines().nth(1).unwrap();
    assert_eq!(first, "1,1,0");
}

#[test]
fn probe_reports_pass_and_writes_traces() {
    let dir = tempfile::tempdir().unwrap();
    let o = proxtr(&["probe", "--runs", "4", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    let verdicts: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("PASS:") || l.starts_with("FAIL:"))
        .collect();
    assert_eq!(verdicts.len(), 5);
    assert!(verdicts.iter().all(|l| l.starts_with("PASS:")));
    let csv = fs::read_to_string(dir.path().join("a_trace.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "seed,k,a,a_min");
    assert!(csv.lines().count() > 4);
}
