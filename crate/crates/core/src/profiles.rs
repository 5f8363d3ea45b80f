//! Data and performance profiles over first-hit iteration counts.
//!
//! For solver `S`, problem `P` and accuracy `tau`, `K(S, P, tau)` is the first
//! outer iteration with `pi_k(1) <= tau` (`None` when that never happens).
//!
//! * data profile: `d_S(alpha) = |{P : K(S,P) <= alpha}| / |P|`
//! * performance profile:
//!   `p_S(alpha) = |{P : K(S,P) <= alpha * min_S' K(S',P)}| / |P|`.
//!   Problems no solver solves count toward no solver.

use crate::{Error, Result};

/// First-hit iteration count; `None` stands for infinity.
pub type FirstHit = Option<usize>;

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTable {
    pub solvers: Vec<String>,
    pub problems: Vec<String>,
    /// `k[problem][solver]`
    pub k: Vec<Vec<FirstHit>>,
    pub tau: f64,
}

impl ProfileTable {
    pub fn new(solvers: Vec<String>, problems: Vec<String>, k: Vec<Vec<FirstHit>>, tau: f64) -> Result<Self> {
        if k.len() != problems.len() || k.iter().any(|row| row.len() != solvers.len()) {
            return Err(Error::invalid("profile table dimensions do not match its labels"));
        }
        let mut seen = std::collections::HashSet::new();
        if !solvers.iter().all(|s| seen.insert(s)) {
            return Err(Error::invalid("solver labels must be unique"));
        }
        Ok(ProfileTable {
            solvers,
            problems,
            k,
            tau,
        })
    }

    pub fn get(&self, problem: usize, solver: usize) -> FirstHit {
        self.k[problem][solver]
    }

    fn best(&self, problem: usize) -> FirstHit {
        self.k[problem].iter().flatten().copied().min()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Data,
    Performance,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::Data => "data",
            CurveKind::Performance => "perf",
        }
    }
}

impl std::str::FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "data" => Ok(CurveKind::Data),
            "perf" | "performance" => Ok(CurveKind::Performance),
            other => Err(Error::invalid(format!("unknown profile kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    pub solver: String,
    pub kind: CurveKind,
    /// `(alpha, fraction)` in grid order.
    pub points: Vec<(f64, f64)>,
}

impl ProfileCurve {
    pub fn at(&self, alpha: f64) -> Option<f64> {
        self.points.iter().find(|(a, _)| *a == alpha).map(|(_, v)| *v)
    }
}

/// Integer budgets `0, 1, ..., max_iters`.
pub fn data_alpha_grid(max_iters: usize) -> Vec<f64> {
    (0..=max_iters).map(|a| a as f64).collect()
}

/// Log-spaced ratios from 1 to 1024, `per_octave` points per doubling.
pub fn performance_alpha_grid(per_octave: usize) -> Vec<f64> {
    let per_octave = per_octave.max(1);
    (0..=10 * per_octave)
        .map(|i| 2f64.powf(i as f64 / per_octave as f64))
        .collect()
}

pub fn data_profile(table: &ProfileTable, alphas: &[f64]) -> Vec<ProfileCurve> {
    let np = table.problems.len();
    (0..table.solvers.len())
        .map(|s| ProfileCurve {
            solver: table.solvers[s].clone(),
            kind: CurveKind::Data,
            points: alphas
                .iter()
                .map(|&alpha| {
                    let solved = (0..np)
                        .filter(|&p| table.get(p, s).is_some_and(|k| k as f64 <= alpha))
                        .count();
                    (alpha, fraction(solved, np))
                })
                .collect(),
        })
        .collect()
}

pub fn performance_profile(table: &ProfileTable, alphas: &[f64]) -> Result<Vec<ProfileCurve>> {
    if table.solvers.len() < 2 {
        return Err(Error::invalid("performance profiles need at least two solvers"));
    }
    let np = table.problems.len();
    let best: Vec<FirstHit> = (0..np).map(|p| table.best(p)).collect();
    Ok((0..table.solvers.len())
        .map(|s| ProfileCurve {
            solver: table.solvers[s].clone(),
            kind: CurveKind::Performance,
            points: alphas
                .iter()
                .map(|&alpha| {
                    let within = (0..np)
                        .filter(|&p| match (table.get(p, s), best[p]) {
                            (Some(k), Some(b)) => k as f64 <= alpha * b as f64,
                            _ => false,
                        })
                        .count();
                    (alpha, fraction(within, np))
                })
                .collect(),
        })
        .collect())
}

fn fraction(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        count as f64 / total as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(k: Vec<Vec<FirstHit>>) -> ProfileTable {
        let ns = k[0].len();
        let np = k.len();
        ProfileTable::new(
            (0..ns).map(|s| format!("S{s}")).collect(),
            (0..np).map(|p| format!("P{p}")).collect(),
            k,
            1e-6,
        )
        .unwrap()
    }

    #[test]
    fn data_profile_counts() {
        let t = table(vec![vec![Some(3)], vec![Some(5)], vec![None]]);
        let c = &data_profile(&t, &[4.0, 10_000.0])[0];
        assert_eq!(c.at(4.0), Some(1.0 / 3.0));
        assert_eq!(c.at(10_000.0), Some(2.0 / 3.0));
    }

    #[test]
    fn performance_profile_ratio() {
        let t = table(vec![vec![Some(2), Some(4)]]);
        let c = performance_profile(&t, &[1.0, 2.0]).unwrap();
        assert_eq!(c[0].points, vec![(1.0, 1.0), (2.0, 1.0)]);
        assert_eq!(c[1].points, vec![(1.0, 0.0), (2.0, 1.0)]);
    }

    #[test]
    fn identical_solvers_are_identically_one() {
        let t = table(vec![vec![Some(7), Some(7)], vec![Some(1), Some(1)]]);
        for c in performance_profile(&t, &performance_alpha_grid(4)).unwrap() {
            assert!(c.points.iter().all(|&(_, v)| v == 1.0));
        }
    }

    #[test]
    fn zero_minimum_counts_only_zero_entries() {
        let t = table(vec![vec![Some(0), Some(3)]]);
        let c = performance_profile(&t, &[1.0, 1000.0]).unwrap();
        assert_eq!(c[0].points, vec![(1.0, 1.0), (1000.0, 1.0)]);
        assert_eq!(c[1].points, vec![(1.0, 0.0), (1000.0, 0.0)]);
    }

    #[test]
    fn unsolved_problems_count_for_nobody() {
        let t = table(vec![vec![None, None], vec![Some(2), Some(2)]]);
        for c in performance_profile(&t, &[1.0, 1024.0]).unwrap() {
            assert!(c.points.iter().all(|&(_, v)| v == 0.5));
        }
    }

    #[test]
    fn performance_profile_needs_two_solvers() {
        let t = table(vec![vec![Some(1)]]);
        assert!(performance_profile(&t, &[1.0]).is_err());
    }

    #[test]
    fn table_shape_is_checked() {
        assert!(ProfileTable::new(vec!["a".into()], vec!["p".into()], vec![vec![Some(1), Some(2)]], 1.0).is_err());
        assert!(ProfileTable::new(vec!["a".into(), "a".into()], vec![], vec![], 1.0).is_err());
    }

    #[test]
    fn grids() {
        let g = performance_alpha_grid(2);
        assert_eq!(g.first(), Some(&1.0));
        assert_eq!(*g.last().unwrap(), 1024.0);
        assert_eq!(data_alpha_grid(3), vec![0.0, 1.0, 2.0, 3.0]);
    }
}
