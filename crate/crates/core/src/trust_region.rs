//! Outer trust-region loop.

use crate::linalg::{sym_norm, Vector};
use crate::model::{stationarity_from_gradient, TrustRegionModel};
use crate::ppg::{initial_gamma_heuristic, ppg_with_backtracking, PpgConfig};
use crate::problems::CompositeProblem;
use crate::{Error, Result};

/// Acceptance and radius-update parameters.
///
/// After computing `rho_k` the step is accepted iff `rho_k >= eta_accept`,
/// and the radius becomes
///
/// * `min(expand_factor * delta, delta_cap)` if `rho_k >= expand_threshold`
///   and `||p_k|| >= boundary_fraction * delta`,
/// * `shrink_factor * delta` if `rho_k < shrink_threshold`,
/// * `delta` otherwise.
///
/// The defaults are the practical values; [`TrConfig::theoretical`] gives the
/// two-branch rule (expand on every success, shrink on every failure).
#[derive(Debug, Clone, PartialEq)]
pub struct TrConfig {
    pub delta0: f64,
    pub eta_accept: f64,
    pub expand_threshold: f64,
    pub shrink_threshold: f64,
    pub expand_factor: f64,
    pub shrink_factor: f64,
    pub delta_cap: f64,
    pub boundary_fraction: f64,
    pub tol_pi: f64,
    pub max_iters: usize,
    /// Store `||H_k||` in each record (costs one symmetric eigensolve per iteration).
    pub track_hessian_norms: bool,
}

impl Default for TrConfig {
    fn default() -> Self {
        TrConfig {
            delta0: 1.0,
            eta_accept: 1e-3,
            expand_threshold: 0.75,
            shrink_threshold: 0.25,
            expand_factor: 2.0,
            shrink_factor: 0.5,
            delta_cap: 1e10,
            boundary_fraction: 1.0 - 1e-5,
            tol_pi: 1e-6,
            max_iters: 10_000,
            track_hessian_norms: false,
        }
    }
}

impl TrConfig {
    /// Success iff `rho >= eta`, then `delta *= gamma_inc`; otherwise
    /// `delta *= gamma_dec`. No radius cap.
    pub fn theoretical(eta: f64, gamma_inc: f64, gamma_dec: f64) -> Self {
        TrConfig {
            eta_accept: eta,
            expand_threshold: eta,
            shrink_threshold: eta,
            expand_factor: gamma_inc,
            shrink_factor: gamma_dec,
            delta_cap: f64::INFINITY,
            boundary_fraction: 0.0,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if !(self.delta0 > 0.0 && self.delta0 <= self.delta_cap) {
            return bad(format!("tr.delta0 must lie in (0, delta_cap], got {}", self.delta0));
        }
        if !(0.0 < self.shrink_factor && self.shrink_factor < 1.0 && self.expand_factor > 1.0) {
            return bad("need 0 < shrink_factor < 1 < expand_factor".into());
        }
        if !(0.0 < self.eta_accept
            && self.eta_accept <= self.shrink_threshold
            && self.shrink_threshold <= self.expand_threshold
            && self.expand_threshold < 1.0)
        {
            return bad("need 0 < eta_accept <= shrink_threshold <= expand_threshold < 1".into());
        }
        if !(0.0..=1.0).contains(&self.boundary_fraction) {
            return bad(format!(
                "tr.boundary_fraction must lie in [0, 1], got {}",
                self.boundary_fraction
            ));
        }
        if !(self.tol_pi >= 0.0) {
            return bad(format!("tr.tol_pi must be nonnegative, got {}", self.tol_pi));
        }
        if self.max_iters == 0 {
            return bad("tr.max_iters must be positive".into());
        }
        Ok(())
    }

    fn next_radius(&self, delta: f64, rho: f64, step_norm: f64) -> f64 {
        if rho >= self.expand_threshold && step_norm >= self.boundary_fraction * delta {
            (self.expand_factor * delta).min(self.delta_cap)
        } else if rho < self.shrink_threshold {
            self.shrink_factor * delta
        } else {
            delta
        }
    }
}

/// One outer iteration. The record for the final iterate (converged or at
/// the iteration cap) has no step: `rho` is `None` and `accepted` is false.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    /// `F(x_k)`
    pub f: f64,
    /// `pi(x_k, 1)`
    pub pi: f64,
    pub delta: f64,
    pub rho: Option<f64>,
    pub step_norm: f64,
    pub accepted: bool,
    pub inner_iters: usize,
    pub backtracks: usize,
    pub gamma_used: f64,
    /// `m_k(0) - m_k(p_k)`, NaN when no step was computed.
    pub predicted_decrease: f64,
    pub hess_norm: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    IterationCap,
    SubproblemFailure,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Converged => "converged",
            SolveStatus::IterationCap => "iteration-cap",
            SolveStatus::SubproblemFailure => "subproblem-failure",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub x_final: Vector,
    pub records: Vec<IterationRecord>,
    pub status: SolveStatus,
    /// `(tau, K)`: first iteration with `pi_k(1) <= tau`, in the order given.
    pub first_hits: Vec<(f64, Option<usize>)>,
}

impl SolveResult {
    pub fn first_hit(&self, tau: f64) -> Option<usize> {
        self.first_hits.iter().find(|(t, _)| *t == tau).and_then(|(_, k)| *k)
    }

    pub fn iterations(&self) -> usize {
        self.records.last().map_or(0, |r| r.k)
    }

    pub fn final_pi(&self) -> f64 {
        self.records.last().map_or(f64::NAN, |r| r.pi)
    }
}

/// `rho = (F0 - F_trial) / pred`, with `-inf` when the predicted decrease is
/// not positive or the trial value is not finite. A non-negative actual
/// reduction that is, like `pred`, within `10 eps max(1, |F0|)` gives 1.
pub fn rho_ratio(f0: f64, f_trial: f64, pred: f64) -> f64 {
    if !(pred > 0.0) || !f_trial.is_finite() {
        return f64::NEG_INFINITY;
    }
    let ared = f0 - f_trial;
    // Both reductions below the rounding level of F: trust the model.
    let noise = 10.0 * f64::EPSILON * f0.abs().max(1.0);
    if ared >= 0.0 && ared <= noise && pred <= noise {
        return 1.0;
    }
    ared / pred
}

/// Runs the trust-region method from `p.x0()` until `pi_k(1) <= cfg.tol_pi`,
/// `cfg.max_iters` iterations, or a subproblem failure.
pub fn solve(p: &CompositeProblem, cfg: &TrConfig, ppg_cfg: &PpgConfig, taus: &[f64]) -> Result<SolveResult> {
    cfg.validate()?;
    ppg_cfg.validate()?;
    if taus.iter().any(|t| !(*t >= 0.0)) {
        return Err(Error::invalid("accuracy levels must be nonnegative"));
    }
    let f = p.smooth();
    let reg = p.reg();

    let mut x = p.x0().clone();
    let mut fx = f.value(&x);
    let mut big_f = p.value(&x)?;
    let mut delta = cfg.delta0;
    let mut gamma = ppg_cfg.gamma0_override;
    let mut first_hits: Vec<(f64, Option<usize>)> = taus.iter().map(|&t| (t, None)).collect();
    let mut records = Vec::new();

    let status = 'outer: loop {
        let k = records.len();
        let grad = f.gradient(&x);
        let pi = stationarity_from_gradient(reg, &x, &grad, 1.0)?;
        for (tau, hit) in first_hits.iter_mut() {
            if hit.is_none() && pi <= *tau {
                *hit = Some(k);
            }
        }
        let terminal = |status| {
            (
                status,
                IterationRecord {
                    k,
                    f: big_f,
                    pi,
                    delta,
                    rho: None,
                    step_norm: 0.0,
                    accepted: false,
                    inner_iters: 0,
                    backtracks: 0,
                    gamma_used: gamma.unwrap_or(f64::NAN),
                    predicted_decrease: f64::NAN,
                    hess_norm: None,
                },
            )
        };
        if pi <= cfg.tol_pi {
            let (s, r) = terminal(SolveStatus::Converged);
            records.push(r);
            break 'outer s;
        }
        if k >= cfg.max_iters {
            let (s, r) = terminal(SolveStatus::IterationCap);
            records.push(r);
            break 'outer s;
        }
        if !(delta > 0.0) {
            let (s, r) = terminal(SolveStatus::SubproblemFailure);
            records.push(r);
            break 'outer s;
        }

        let hess = f.hessian(&x);
        let hess_norm = cfg.track_hessian_norms.then(|| sym_norm(&hess));
        let model = TrustRegionModel::new(x.clone(), fx, grad, hess, reg.clone())?;
        let gamma0 = match gamma {
            Some(g) if ppg_cfg.gamma_refresh => g.max(initial_gamma_heuristic(&model)),
            Some(g) => g,
            None => initial_gamma_heuristic(&model),
        };
        let out = match ppg_with_backtracking(&model, delta, ppg_cfg, gamma0) {
            Ok(out) => out,
            Err(Error::BacktrackingFailure { best, .. }) => {
                let (s, mut r) = terminal(SolveStatus::SubproblemFailure);
                r.inner_iters = best.inner_iters();
                r.backtracks = ppg_cfg.max_backtracks;
                r.hess_norm = hess_norm;
                records.push(r);
                break 'outer s;
            }
            Err(e) => return Err(e),
        };
        gamma = Some(out.gamma_used);

        let step = &out.p_star;
        let pred = model.decrease(step)?;
        let trial = &x + step;
        let f_trial_smooth = f.value(&trial);
        let f_trial = if f_trial_smooth.is_finite() {
            f_trial_smooth + reg.evaluate(&trial)?
        } else {
            f64::INFINITY
        };
        let rho = rho_ratio(big_f, f_trial, pred);
        let accepted = rho >= cfg.eta_accept;
        let step_norm = step.norm();
        records.push(IterationRecord {
            k,
            f: big_f,
            pi,
            delta,
            rho: Some(rho),
            step_norm,
            accepted,
            inner_iters: out.inner_iters(),
            backtracks: out.backtracks,
            gamma_used: out.gamma_used,
            predicted_decrease: pred,
            hess_norm,
        });
        if accepted {
            x = trial;
            fx = f_trial_smooth;
            big_f = f_trial;
        }
        delta = cfg.next_radius(delta, rho, step_norm);
    };

    Ok(SolveResult {
        x_final: x,
        records,
        status,
        first_hits,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::Matrix;
    use crate::problems::{find_problem, Quadratic};
    use crate::regularizers::Regularizer;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho_ratio(10.0, 9.0, 1.0), 1.0);
        assert_eq!(rho_ratio(10.0, 9.0, 0.0), f64::NEG_INFINITY);
        assert!((rho_ratio(10.0, 9.9, 0.2) - 0.5).abs() < 1e-12);
        assert_eq!(rho_ratio(10.0, f64::INFINITY, 1.0), f64::NEG_INFINITY);
        assert_eq!(rho_ratio(10.0, 9.0, -1.0), f64::NEG_INFINITY);
        assert_eq!(rho_ratio(125.0, 125.0, 1e-18), 1.0);
        assert!(rho_ratio(125.0, 125.0 + 125.0 * f64::EPSILON, 1e-18) < 0.0);
        assert_eq!(rho_ratio(1.0, 1.0, 1e-3), 0.0);
    }

    #[test]
    fn stationary_start_converges_immediately() {
        let h = Matrix::from_row_slice(2, 2, &[3.0, 1.0, 1.0, 2.0]);
        let g = v(&[1.0, -1.0]);
        let xstar = -h.clone().lu().solve(&g).unwrap();
        let q = Quadratic::new(h, g, xstar).unwrap();
        let p = CompositeProblem::new(Arc::new(q), Regularizer::zero(2)).unwrap();
        let res = solve(&p, &TrConfig::default(), &PpgConfig::default(), &[1e-3]).unwrap();
        assert_eq!(res.status, SolveStatus::Converged);
        assert_eq!(res.records.len(), 1);
        assert_eq!(res.records[0].k, 0);
        assert_eq!(res.first_hit(1e-3), Some(0));
    }

    #[test]
    fn half_square_plus_l1_converges_to_origin() {
        let q = Quadratic::new(Matrix::identity(2, 2), Vector::zeros(2), v(&[3.0, -3.0])).unwrap();
        let p = CompositeProblem::new(Arc::new(q), Regularizer::l1(1.0, 2).unwrap()).unwrap();
        let res = solve(&p, &TrConfig::default(), &PpgConfig::default(), &[]).unwrap();
        assert_eq!(res.status, SolveStatus::Converged);
        assert!(res.iterations() <= 50);
        assert!(res.x_final.amax() <= 1e-6);
        assert!(res.final_pi() <= 1e-6);
    }

    #[test]
    fn rosenbrock_l1_converges() {
        let p = find_problem("ROSENBR").unwrap();
        let res = solve(&p, &TrConfig::default(), &PpgConfig::with_n(50), &[1e-3, 1e-6]).unwrap();
        assert_eq!(res.status, SolveStatus::Converged);
        let k3 = res.first_hit(1e-3).unwrap();
        let k6 = res.first_hit(1e-6).unwrap();
        assert!(k3 <= k6);
    }

    #[test]
    fn invariants_along_trace() {
        let p = find_problem("BEALE").unwrap();
        let cfg = TrConfig::default();
        let res = solve(&p, &cfg, &PpgConfig::with_n(15), &[]).unwrap();
        for w in res.records.windows(2) {
            assert!(w[1].f <= w[0].f);
            if !w[0].accepted {
                assert_eq!(w[1].f, w[0].f);
            }
        }
        for r in &res.records {
            assert!(r.delta > 0.0 && r.delta <= 1e10);
            if r.accepted {
                let rho = r.rho.unwrap();
                assert!(rho >= cfg.eta_accept);
            }
        }
    }

    #[test]
    fn warm_started_gamma_never_increases() {
        let p = find_problem("CLIFF").unwrap();
        let cfg = TrConfig {
            max_iters: 200,
            ..Default::default()
        };
        let res = solve(&p, &cfg, &PpgConfig::default(), &[]).unwrap();
        let steps: Vec<f64> = res
            .records
            .iter()
            .filter(|r| r.rho.is_some())
            .map(|r| r.gamma_used)
            .collect();
        assert!(steps.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn refreshed_gamma_recovers_from_a_badly_scaled_start() {
        let p = find_problem("CLIFF").unwrap();
        let ppg = PpgConfig {
            gamma_refresh: true,
            ..Default::default()
        };
        let res = solve(&p, &TrConfig::default(), &ppg, &[]).unwrap();
        assert_eq!(res.status, SolveStatus::Converged);
        let warm = solve(&p, &TrConfig::default(), &PpgConfig::default(), &[]).unwrap();
        assert_eq!(warm.status, SolveStatus::IterationCap);
    }

    #[test]
    fn iteration_cap_is_reported() {
        let p = find_problem("ROSENBR").unwrap();
        let cfg = TrConfig {
            max_iters: 3,
            ..Default::default()
        };
        let res = solve(&p, &cfg, &PpgConfig::with_n(5), &[0.0]).unwrap();
        assert_eq!(res.status, SolveStatus::IterationCap);
        assert_eq!(res.records.len(), 4);
        assert_eq!(res.first_hit(0.0), None);
    }

    #[test]
    fn theoretical_rule_expands_on_every_success() {
        let cfg = TrConfig::theoretical(0.1, 2.0, 0.5);
        cfg.validate().unwrap();
        assert_eq!(cfg.next_radius(1.0, 0.1, 0.0), 2.0);
        assert_eq!(cfg.next_radius(1.0, 0.09, 1.0), 0.5);
        let practical = TrConfig::default();
        assert_eq!(practical.next_radius(1.0, 0.9, 0.5), 1.0);
        assert_eq!(practical.next_radius(1.0, 0.9, 1.0), 2.0);
        assert_eq!(practical.next_radius(1.0, 0.5, 1.0), 1.0);
        assert_eq!(practical.next_radius(1.0, 0.1, 1.0), 0.5);
        assert_eq!(practical.next_radius(0.8e10, 0.9, 0.8e10), 1e10);
    }

    #[test]
    fn config_validation() {
        assert!(TrConfig::default().validate().is_ok());
        assert!(TrConfig {
            delta0: 0.0,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(TrConfig {
            shrink_factor: 1.0,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(TrConfig {
            eta_accept: 0.5,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(TrConfig {
            delta0: 1e11,
            ..Default::default()
        }
        .validate()
        .is_err());
    }
}
