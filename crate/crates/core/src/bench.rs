//! Solver-by-problem benchmark sweeps.

use rayon::prelude::*;

use crate::ppg::PpgConfig;
use crate::problems::CompositeProblem;
use crate::profiles::{FirstHit, ProfileTable};
use crate::trust_region::{solve, SolveResult, TrConfig};
use crate::{Error, Result};

/// Accuracy levels used for first-hit tables by default.
pub const DEFAULT_TAUS: [f64; 2] = [1e-3, 1e-6];

#[derive(Debug, Clone, PartialEq)]
pub struct SolverSpec {
    pub label: String,
    pub ppg: PpgConfig,
}

impl SolverSpec {
    pub fn new(label: impl Into<String>, ppg: PpgConfig) -> Self {
        SolverSpec {
            label: label.into(),
            ppg,
        }
    }

    /// `PPG-N<n>`, or `CAUCHY` for the single-step baseline `n = 1`.
    pub fn ppg(n: usize) -> Self {
        let label = if n == 1 {
            "CAUCHY".to_string()
        } else {
            format!("PPG-N{n}")
        };
        SolverSpec::new(label, PpgConfig::with_n(n))
    }
}

/// Baseline plus `N in {15, 30, 50}`.
pub fn default_solver_matrix() -> Vec<SolverSpec> {
    [1, 15, 30, 50].into_iter().map(SolverSpec::ppg).collect()
}

#[derive(Debug, Clone)]
pub struct PairResult {
    pub solver: String,
    pub problem: String,
    /// Error message if the solve aborted before producing a trace.
    pub outcome: std::result::Result<SolveResult, String>,
}

impl PairResult {
    pub fn first_hit(&self, tau: f64) -> FirstHit {
        self.outcome.as_ref().ok().and_then(|r| r.first_hit(tau))
    }
}

#[derive(Debug, Clone)]
pub struct BenchmarkRun {
    /// One table per accuracy level, in the order requested.
    pub tables: Vec<ProfileTable>,
    /// Solver-major: all problems for the first solver, then the next, ...
    pub results: Vec<PairResult>,
}

/// Runs every `(solver, problem)` pair on a pool of `jobs` worker threads.
/// Results are ordered by `(solver, problem)` independent of completion order.
pub fn run_benchmark(
    suite: &[CompositeProblem],
    solvers: &[SolverSpec],
    cfg: &TrConfig,
    taus: &[f64],
    jobs: usize,
) -> Result<BenchmarkRun> {
    if suite.is_empty() {
        return Err(Error::invalid("benchmark suite is empty"));
    }
    if solvers.is_empty() {
        return Err(Error::invalid("no solvers given"));
    }
    cfg.validate()?;
    for s in solvers {
        s.ppg.validate()?;
    }
    let pairs: Vec<(&SolverSpec, &CompositeProblem)> =
        solvers.iter().flat_map(|s| suite.iter().map(move |p| (s, p))).collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    let results: Vec<PairResult> = pool.install(|| {
        pairs
            .par_iter()
            .map(|(s, p)| PairResult {
                solver: s.label.clone(),
                problem: p.name().to_string(),
                outcome: solve(p, cfg, &s.ppg, taus).map_err(|e| e.to_string()),
            })
            .collect()
    });

    let labels: Vec<String> = solvers.iter().map(|s| s.label.clone()).collect();
    let names: Vec<String> = suite.iter().map(|p| p.name().to_string()).collect();
    let np = suite.len();
    let tables = taus
        .iter()
        .map(|&tau| {
            let k = (0..np)
                .map(|p| (0..solvers.len()).map(|s| results[s * np + p].first_hit(tau)).collect())
                .collect();
            ProfileTable::new(labels.clone(), names.clone(), k, tau)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BenchmarkRun { tables, results })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::{Matrix, Vector};
    use crate::problems::{find_problem, Quadratic};
    use crate::regularizers::Regularizer;

    fn stationary_problem() -> CompositeProblem {
        let q = Quadratic::new(Matrix::identity(2, 2), Vector::zeros(2), Vector::zeros(2)).unwrap();
        CompositeProblem::new(Arc::new(q), Regularizer::l1(1.0, 2).unwrap()).unwrap()
    }

    #[test]
    fn table_shape_and_stationary_problem() {
        let suite = vec![find_problem("ROSENBR").unwrap(), stationary_problem()];
        let solvers = vec![SolverSpec::ppg(15), SolverSpec::ppg(30), SolverSpec::ppg(50)];
        let run = run_benchmark(&suite, &solvers, &TrConfig::default(), &DEFAULT_TAUS, 2).unwrap();
        assert_eq!(run.tables.len(), 2);
        for t in &run.tables {
            assert_eq!(t.k.len(), 2);
            assert!(t.k.iter().all(|row| row.len() == 3));
            assert!(t.k[1].iter().all(|k| *k == Some(0)));
        }
        assert_eq!(run.tables[0].solvers, vec!["PPG-N15", "PPG-N30", "PPG-N50"]);
    }

    #[test]
    fn impossible_accuracy_is_never_hit() {
        let suite = vec![find_problem("DENSCHNB").unwrap()];
        let cfg = TrConfig {
            max_iters: 200,
            ..Default::default()
        };
        let run = run_benchmark(&suite, &[SolverSpec::ppg(15)], &cfg, &[0.0], 1).unwrap();
        let r = run.results[0].outcome.as_ref().unwrap();
        let expected = if r.records.iter().any(|rec| rec.pi == 0.0) {
            r.first_hit(0.0)
        } else {
            None
        };
        assert_eq!(run.tables[0].k[0][0], expected);
    }

    #[test]
    fn results_do_not_depend_on_pool_size() {
        let suite: Vec<_> = ["BEALE", "CUBE", "HIMMELBG"]
            .iter()
            .map(|n| find_problem(n).unwrap())
            .collect();
        let solvers = vec![SolverSpec::ppg(1), SolverSpec::ppg(15)];
        let a = run_benchmark(&suite, &solvers, &TrConfig::default(), &DEFAULT_TAUS, 1).unwrap();
        let b = run_benchmark(&suite, &solvers, &TrConfig::default(), &DEFAULT_TAUS, 4).unwrap();
        assert_eq!(a.tables, b.tables);
    }

    #[test]
    fn labels() {
        assert_eq!(SolverSpec::ppg(1).label, "CAUCHY");
        assert_eq!(SolverSpec::ppg(30).label, "PPG-N30");
        assert_eq!(default_solver_matrix().len(), 4);
    }
}
