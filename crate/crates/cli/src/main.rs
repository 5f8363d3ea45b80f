mod config;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use proxtr::bench::{default_solver_matrix, run_benchmark, SolverSpec, DEFAULT_TAUS};
use proxtr::output::{
    emit_outputs, fmt_f64, fmt_tau, iteration_csv, parse_ktable, profile_csv, profile_svg, tau_from_ktable_name,
    ProfileSet,
};
use proxtr::problems::{builtin_names, find_smooth};
use proxtr::profiles::{data_alpha_grid, performance_alpha_grid};
use proxtr::theory::{
    first_success_root_bound, hessian_growth_check, radius_probe_run, technical_sum_sides, SUM_GRID_K, SUM_GRID_MU,
    SUM_GRID_T,
};
use proxtr::{
    builtin_suite, data_profile, performance_profile, solve, CompositeProblem, CurveKind, SmoothOracle, SolveStatus,
    Vector,
};

use config::{ConfigError, Settings};

#[derive(Parser, Debug)]
#[command(
    name = "proxtr",
    version,
    about = "Nonsmooth trust-region solver for min f(x) + h(x)"
)]
struct Cli {
    /// Flat `key = value` configuration file; flags given on the command line win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Print the builtin problems with their dimensions and exit.
    #[arg(long)]
    list_problems: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one builtin problem.
    Solve {
        #[arg(long)]
        problem: String,
        /// PPG inner iterations per subproblem.
        #[arg(long)]
        n: Option<usize>,
        /// Stop once pi(x_k, 1) <= tol.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        max_iters: Option<usize>,
        /// Write the per-iteration CSV here.
        #[arg(long, value_name = "PATH")]
        log: Option<PathBuf>,
    },
    /// Run a solver matrix over the builtin suite and write tables, profiles and plots.
    Bench {
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Comma-separated inner iteration counts; 1 is labelled CAUCHY.
        #[arg(long, value_delimiter = ',', value_name = "N,...")]
        solvers: Option<Vec<usize>>,
        #[arg(long)]
        max_iters: Option<usize>,
    },
    /// Build a data or performance profile from a first-hit table.
    Profiles {
        #[arg(long, value_name = "CSV")]
        ktable: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Accuracy level; read from a `ktable_tau<tau>.csv` file name when omitted.
        #[arg(long)]
        tau: Option<f64>,
        /// Defaults to the directory holding the table.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Check the radius floor, decrease floor and technical inequalities numerically.
    Probe {
        #[arg(long, default_value_t = 20)]
        runs: u64,
        #[arg(long, default_value_t = 10)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write `a_k` traces as CSV into this directory.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Data,
    Perf,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn run(message: impl ToString) -> Self {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::config(e)
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let mut settings = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
            config::parse(&text).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?
        }
        None => Settings::default(),
    };
    if cli.list_problems {
        for p in builtin_suite() {
            println!("{:<12} {}", p.name(), p.dim());
        }
        return Ok(());
    }
    match cli.command {
        None => Err(Failure::config("no subcommand given; try --help")),
        Some(Command::Solve {
            problem,
            n,
            tol,
            max_iters,
            log,
        }) => {
            if let Some(n) = n {
                settings.ppg.n = n;
            }
            if let Some(t) = tol {
                settings.tr.tol_pi = t;
            }
            if let Some(m) = max_iters {
                settings.tr.max_iters = m;
            }
            settings.validate()?;
            cmd_solve(&settings, &problem, log.as_deref())
        }
        Some(Command::Bench {
            out,
            jobs,
            solvers,
            max_iters,
        }) => {
            if let Some(m) = max_iters {
                settings.tr.max_iters = m;
            }
            settings.validate()?;
            cmd_bench(&settings, &out, jobs, solvers)
        }
        Some(Command::Profiles { ktable, kind, tau, out }) => {
            settings.validate()?;
            cmd_profiles(&settings, &ktable, kind, tau, out)
        }
        Some(Command::Probe { runs, dim, seed, out }) => {
            settings.validate()?;
            cmd_probe(&settings, runs, dim, seed, out.as_deref())
        }
    }
}

/// Pairs a builtin `f` with the configured `h`. Starting points outside
/// `dom h` are projected by the prox.
fn compose(settings: &Settings, smooth: Arc<dyn SmoothOracle>) -> Result<CompositeProblem, Failure> {
    let reg = settings.reg.build(smooth.dim())?;
    let mut x0 = smooth.x0();
    if !reg.evaluate(&x0).map_err(Failure::config)?.is_finite() {
        x0 = reg.prox(1.0, &x0).map_err(Failure::config)?;
    }
    CompositeProblem::with_start(smooth, reg, x0).map_err(Failure::config)
}

fn format_vector(x: &Vector) -> String {
    let parts: Vec<String> = x.iter().map(|v| fmt_f64(*v)).collect();
    format!("[{}]", parts.join(", "))
}

fn cmd_solve(settings: &Settings, name: &str, log: Option<&Path>) -> CliResult {
    let smooth = find_smooth(name).map_err(Failure::config)?;
    let problem = compose(settings, smooth)?;
    let res = solve(&problem, &settings.tr, &settings.ppg, &DEFAULT_TAUS).map_err(Failure::run)?;
    if let Some(path) = log {
        fs::write(path, iteration_csv(&res.records)).map_err(|e| Failure::run(format!("{}: {e}", path.display())))?;
    }
    let last = res.records.last().expect("solve always records the final iterate");
    println!("problem    {} (d = {})", problem.name(), problem.dim());
    println!("status     {}", res.status.as_str());
    println!("iterations {}", res.iterations());
    println!("F          {}", fmt_f64(last.f));
    println!("pi1        {}", fmt_f64(last.pi));
    for (tau, k) in &res.first_hits {
        let k = k.map_or_else(|| "inf".to_string(), |k| k.to_string());
        println!("K(tau={})  {k}", fmt_tau(*tau));
    }
    println!("x          {}", format_vector(&res.x_final));
    if res.status == SolveStatus::Converged {
        Ok(())
    } else {
        Err(Failure::run(format!("{}: {}", problem.name(), res.status.as_str())))
    }
}

fn cmd_bench(settings: &Settings, out: &Path, jobs: usize, solvers: Option<Vec<usize>>) -> CliResult {
    let solvers: Vec<SolverSpec> = match solvers {
        Some(ns) => ns.into_iter().map(SolverSpec::ppg).collect(),
        None => default_solver_matrix(),
    };
    let solvers: Vec<SolverSpec> = solvers
        .into_iter()
        .map(|s| {
            let n = s.ppg.n;
            SolverSpec::new(
                s.label,
                proxtr::PpgConfig {
                    n,
                    ..settings.ppg.clone()
                },
            )
        })
        .collect();
    let suite = builtin_names()
        .iter()
        .map(|name| compose(settings, find_smooth(name).map_err(Failure::config)?))
        .collect::<Result<Vec<_>, _>>()?;
    let run = run_benchmark(&suite, &solvers, &settings.tr, &DEFAULT_TAUS, jobs.max(1)).map_err(Failure::config)?;

    let data_alphas = data_alpha_grid(settings.tr.max_iters);
    let perf_alphas = performance_alpha_grid(8);
    let mut sets = Vec::new();
    for table in &run.tables {
        sets.push(ProfileSet {
            kind: CurveKind::Data,
            tau: table.tau,
            curves: data_profile(table, &data_alphas),
        });
        if table.solvers.len() >= 2 {
            sets.push(ProfileSet {
                kind: CurveKind::Performance,
                tau: table.tau,
                curves: performance_profile(table, &perf_alphas).map_err(Failure::run)?,
            });
        }
    }
    let written = emit_outputs(out, &run, &sets).map_err(Failure::run)?;

    for table in &run.tables {
        let np = table.problems.len();
        let rates: Vec<String> = (0..table.solvers.len())
            .map(|s| {
                let solved = (0..np).filter(|&p| table.get(p, s).is_some()).count();
                format!("{} {solved}/{np}", table.solvers[s])
            })
            .collect();
        println!("tau={}: {}", fmt_tau(table.tau), rates.join(", "));
    }
    println!("wrote {} files to {}", written.len(), out.display());
    Ok(())
}

fn cmd_profiles(settings: &Settings, ktable: &Path, kind: Kind, tau: Option<f64>, out: Option<PathBuf>) -> CliResult {
    let tau = tau
        .or_else(|| tau_from_ktable_name(ktable))
        .ok_or_else(|| Failure::config(format!("{}: cannot infer tau; pass --tau", ktable.display())))?;
    let text = fs::read_to_string(ktable).map_err(|e| Failure::config(format!("{}: {e}", ktable.display())))?;
    let table = parse_ktable(&text, tau).map_err(|e| Failure::config(format!("{}: {e}", ktable.display())))?;
    let set = match kind {
        Kind::Data => {
            let horizon = table
                .k
                .iter()
                .flatten()
                .flatten()
                .copied()
                .max()
                .unwrap_or(0)
                .max(settings.tr.max_iters);
            ProfileSet {
                kind: CurveKind::Data,
                tau,
                curves: data_profile(&table, &data_alpha_grid(horizon)),
            }
        }
        Kind::Perf => ProfileSet {
            kind: CurveKind::Performance,
            tau,
            curves: performance_profile(&table, &performance_alpha_grid(8)).map_err(Failure::config)?,
        },
    };
    let dir = out.unwrap_or_else(|| ktable.parent().map(Path::to_path_buf).unwrap_or_default());
    let dir = if dir.as_os_str().is_empty() {
        PathBuf::from(".")
    } else {
        dir
    };
    fs::create_dir_all(&dir).map_err(|e| Failure::run(format!("{}: {e}", dir.display())))?;
    let stem = format!("profile_{}_tau{}", set.kind.as_str(), fmt_tau(tau));
    for (ext, body) in [("csv", profile_csv(&set.curves)), ("svg", profile_svg(&set))] {
        let path = dir.join(format!("{stem}.{ext}"));
        fs::write(&path, body).map_err(|e| Failure::run(format!("{}: {e}", path.display())))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_probe(settings: &Settings, runs: u64, dim: usize, seed: u64, out: Option<&Path>) -> CliResult {
    if runs == 0 || dim == 0 {
        return Err(Failure::config("--runs and --dim must be positive"));
    }
    let mut all_ok = true;
    let mut a_ok = 0;
    let mut dec_ok = 0;
    let mut growth_ok = 0;
    let mut traces = String::from("seed,k,a,a_min\n");
    for s in seed..seed + runs {
        let r = radius_probe_run(dim, s, &settings.ppg).map_err(Failure::run)?;
        let amin = r.probe.a_min.unwrap_or(f64::NAN);
        for (k, a) in r.probe.a_trace.iter().enumerate() {
            let _ = writeln!(traces, "{s},{k},{},{}", fmt_f64(*a), fmt_f64(amin));
        }
        let norms = vec![r.probe.mu_growth.unwrap_or(0.0); r.probe.a_trace.len()];
        let a_pass = r.a_margin >= -1e-8;
        let dec_pass = r.decrease_margin >= -1e-12;
        let growth_pass = hessian_growth_check(&norms, r.probe.mu_growth.unwrap_or(0.0), r.probe.t_growth);
        a_ok += usize::from(a_pass);
        dec_ok += usize::from(dec_pass);
        growth_ok += usize::from(growth_pass);
        println!(
            "run seed={s} status={} kappa_p={} a_min={} a_margin={} decrease_margin={}",
            r.status.as_str(),
            fmt_f64(r.probe.kappa_p.unwrap_or(f64::NAN)),
            fmt_f64(amin),
            fmt_f64(r.a_margin),
            fmt_f64(r.decrease_margin),
        );
    }
    let runs_usize = runs as usize;
    for (label, ok) in [
        ("radius floor a_k >= a_min", a_ok),
        ("model decrease floor", dec_ok),
        ("Hessian growth bound", growth_ok),
    ] {
        let pass = ok == runs_usize;
        all_ok &= pass;
        println!("{}: {label} ({ok}/{runs_usize} runs)", verdict(pass));
    }

    let mut sum_total = 0;
    let mut sum_ok = 0;
    for &mu in &SUM_GRID_MU {
        for &t in &SUM_GRID_T {
            for &(k1, k2) in &SUM_GRID_K {
                let (lhs, rhs) = technical_sum_sides(mu, t, k1, k2);
                sum_total += 1;
                sum_ok += usize::from(lhs >= rhs);
            }
        }
    }
    all_ok &= sum_ok == sum_total;
    println!(
        "{}: technical sum inequality ({sum_ok}/{sum_total} grid points)",
        verdict(sum_ok == sum_total)
    );

    let mut root_total = 0;
    let mut root_ok = 0;
    for a1 in [1e-4, 0.1, 1.0, 10.0, 1e3] {
        for a2 in [0.0, 0.5, 2.0, 10.0, 100.0] {
            let kstar = first_success_root_bound(a1, a2);
            let first = kstar.floor() as u64 + 1;
            root_total += 1;
            let holds = (first..first + 1000).all(|k| (k as f64) > a1 + a2 * (k as f64).sqrt());
            root_ok += usize::from(holds);
        }
    }
    all_ok &= root_ok == root_total;
    println!(
        "{}: root bound k > a1 + a2 sqrt(k) beyond k* ({root_ok}/{root_total} pairs)",
        verdict(root_ok == root_total)
    );

    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Failure::run(format!("{}: {e}", dir.display())))?;
        let path = dir.join("a_trace.csv");
        fs::write(&path, traces).map_err(|e| Failure::run(format!("{}: {e}", path.display())))?;
        println!("wrote {}", path.display());
    }
    if all_ok {
        Ok(())
    } else {
        Err(Failure::run("one or more probes failed"))
    }
}
