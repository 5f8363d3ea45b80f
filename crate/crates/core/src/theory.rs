//! Numerical probes of the quantities used in the complexity analysis of the
//! trust-region method: the scaled radius `a_k`, its floor `a_min`, the
//! sufficient-decrease ratio `kappa_p`, and two technical inequalities.
//!
//! Constants such as `kappa_p` or the Lipschitz constant of `grad f` are never
//! assumed; they are either supplied or measured on instances where they are
//! known exactly (random quadratics).

use std::sync::Arc;

use crate::linalg::{sym_norm, Vector};
use crate::model::TrustRegionModel;
use crate::ppg::PpgConfig;
use crate::problems::{random_quadratic, CompositeProblem};
use crate::regularizers::Regularizer;
use crate::trust_region::{solve, IterationRecord, SolveStatus, TrConfig};
use crate::{Error, Result};

/// Measured or supplied constants for one run.
#[derive(Debug, Clone, Default)]
pub struct TheoryProbe {
    /// `max(L, 1) / 2`
    pub c1: f64,
    pub kappa_p: Option<f64>,
    pub mu_growth: Option<f64>,
    pub t_growth: f64,
    pub a_trace: Vec<f64>,
    pub a_min: Option<f64>,
}

/// Model-error constant `c_1 = max(L, 1) / 2`.
pub fn c1_constant(lipschitz: f64) -> f64 {
    0.5 * lipschitz.max(1.0)
}

/// `a_k = delta_k (1 + max_{j<=k} ||H_j||) / min_{j<=k} pi_j(1)`.
///
/// The trace is cut at the first record whose `pi` is not positive.
pub fn compute_a_trace(records: &[IterationRecord], hess_norms: &[f64]) -> Result<Vec<f64>> {
    if records.is_empty() {
        return Err(Error::invalid("empty iteration trace"));
    }
    if hess_norms.len() < records.len() {
        return Err(Error::invalid(format!(
            "need a Hessian norm per record ({} < {})",
            hess_norms.len(),
            records.len()
        )));
    }
    let mut max_h = 0.0_f64;
    let mut min_pi = f64::INFINITY;
    Ok(records
        .iter()
        .zip(hess_norms)
        .take_while(|(r, _)| r.pi > 0.0)
        .map(|(r, &h)| {
            max_h = max_h.max(h);
            min_pi = min_pi.min(r.pi);
            r.delta * (1.0 + max_h) / min_pi
        })
        .collect())
}

/// `a_min = min(a_0, gamma_dec, gamma_dec kappa_p (1 - eta) / c_1)`.
pub fn a_min(a0: f64, gamma_dec: f64, kappa_p: f64, eta: f64, c1: f64) -> f64 {
    a0.min(gamma_dec).min(gamma_dec * kappa_p * (1.0 - eta) / c1)
}

/// Empirical sufficient-decrease constant of a step:
/// `(m(0) - m(p)) / (pi * min(delta, pi / (1 + ||H||)))`.
pub fn assumption3_ratio(m: &TrustRegionModel, p: &Vector, delta: f64, pi_gmax: f64) -> Result<f64> {
    let decrease = m.decrease(p)?;
    decrease_ratio(decrease, delta, pi_gmax, sym_norm(m.hessian()))
}

/// Same ratio from an iteration record; needs the Hessian norm to have been
/// tracked. Returns `None` for records without a step.
pub fn assumption3_ratio_from_record(r: &IterationRecord) -> Option<f64> {
    if r.rho.is_none() || !r.predicted_decrease.is_finite() {
        return None;
    }
    decrease_ratio(r.predicted_decrease, r.delta, r.pi, r.hess_norm?).ok()
}

fn decrease_ratio(decrease: f64, delta: f64, pi: f64, hess_norm: f64) -> Result<f64> {
    let denom = pi * delta.min(pi / (1.0 + hess_norm));
    if !(denom > 0.0) {
        return Err(Error::invalid("sufficient-decrease denominator is zero"));
    }
    Ok(decrease / denom)
}

/// Lower bound on the model decrease
/// `kappa_p a_min (min_{j<=k} pi_j)^2 / (1 + max_{j<=k} ||H_j||)`.
pub fn decrease_floor(kappa_p: f64, a_min: f64, min_pi: f64, max_hess: f64) -> f64 {
    kappa_p * a_min * min_pi * min_pi / (1.0 + max_hess)
}

/// `k* = ((a2 + sqrt(a2^2 + 4 a1)) / 2)^2`: every integer `k > k*` satisfies
/// `k > a1 + a2 sqrt(k)`.
pub fn first_success_root_bound(a1: f64, a2: f64) -> f64 {
    let root = 0.5 * (a2 + (a2 * a2 + 4.0 * a1).sqrt());
    root * root
}

/// Whether `max_{j<=k} ||H_j|| <= mu (1 + k^t)` holds along the whole trace.
pub fn hessian_growth_check(hess_norms: &[f64], mu: f64, t: f64) -> bool {
    let mut running = 0.0_f64;
    hess_norms.iter().enumerate().all(|(k, &h)| {
        running = running.max(h);
        running <= mu * (1.0 + (k as f64).powf(t))
    })
}

/// Both sides of
/// `sum_{k=k1}^{k2} 1/(1 + mu(1 + (k+1)^t))
///     >= (k1+1)^t / (1 + mu(1 + (k1+1)^t)) * int_{k1+1}^{k2+2} s^{-t} ds`.
pub fn technical_sum_sides(mu: f64, t: f64, k1: u64, k2: u64) -> (f64, f64) {
    let lhs: f64 = (k1..=k2)
        .map(|k| 1.0 / (1.0 + mu * (1.0 + ((k + 1) as f64).powf(t))))
        .sum();
    let a = (k1 + 1) as f64;
    let b = (k2 + 2) as f64;
    let integral = if (t - 1.0).abs() < 1e-15 {
        b.ln() - a.ln()
    } else {
        (b.powf(1.0 - t) - a.powf(1.0 - t)) / (1.0 - t)
    };
    let rhs = a.powf(t) / (1.0 + mu * (1.0 + a.powf(t))) * integral;
    (lhs, rhs)
}

pub fn technical_sum_check(mu: f64, t: f64, k1: u64, k2: u64) -> bool {
    let (lhs, rhs) = technical_sum_sides(mu, t, k1, k2);
    lhs >= rhs
}

/// `mu` values of the standard technical-sum grid.
pub const SUM_GRID_MU: [f64; 10] = [0.01, 0.03, 0.1, 0.3, 0.5, 1.0, 3.0, 10.0, 30.0, 100.0];
/// `t` values of the standard technical-sum grid.
pub const SUM_GRID_T: [f64; 10] = [0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.75, 0.9, 1.0];
/// `(k1, k2)` pairs of the standard technical-sum grid.
pub const SUM_GRID_K: [(u64, u64); 5] = [(0, 1), (0, 10), (3, 100), (10, 1000), (100, 10_000)];

/// Outcome of the radius-floor and decrease-floor probes on one run.
#[derive(Debug, Clone)]
pub struct RadiusProbeRun {
    pub seed: u64,
    pub status: SolveStatus,
    pub probe: TheoryProbe,
    /// Smallest `a_k - a_min`.
    pub a_margin: f64,
    /// Smallest `(m_k(0) - m_k(p_k)) - decrease floor`.
    pub decrease_margin: f64,
}

/// Parameters of the two-branch radius rule used by the probes.
pub const PROBE_ETA: f64 = 0.1;
pub const PROBE_GAMMA_INC: f64 = 2.0;
pub const PROBE_GAMMA_DEC: f64 = 0.5;

/// Solves a seeded convex random quadratic plus `||x||_1` under the
/// two-branch radius rule and evaluates `a_k` against `a_min` (with `kappa_p`
/// measured as the smallest observed decrease ratio and `c_1` exact), and
/// the per-iteration model decrease against its floor.
pub fn radius_probe_run(d: usize, seed: u64, ppg: &PpgConfig) -> Result<RadiusProbeRun> {
    let q = random_quadratic(d, 0.1, 10.0, seed)?;
    let lipschitz = q.hessian_norm();
    let x0 = q.linear_term().map(|g| 3.0 * g) + Vector::from_element(d, 1.0);
    let q = q.with_start(x0);
    let problem = CompositeProblem::new(Arc::new(q), Regularizer::l1(1.0, d)?)?;
    let cfg = TrConfig {
        track_hessian_norms: true,
        ..TrConfig::theoretical(PROBE_ETA, PROBE_GAMMA_INC, PROBE_GAMMA_DEC)
    };
    let res = solve(&problem, &cfg, ppg, &[])?;
    // The terminal record has no model; its Hessian is the same constant H.
    let hess_norms: Vec<f64> = res.records.iter().map(|r| r.hess_norm.unwrap_or(lipschitz)).collect();
    let a_trace = compute_a_trace(&res.records, &hess_norms)?;
    let kappa_p = res
        .records
        .iter()
        .filter_map(assumption3_ratio_from_record)
        .fold(f64::INFINITY, f64::min);
    let c1 = c1_constant(lipschitz);
    let amin = a_min(a_trace[0], PROBE_GAMMA_DEC, kappa_p, PROBE_ETA, c1);
    let a_margin = a_trace.iter().map(|a| a - amin).fold(f64::INFINITY, f64::min);

    let mut decrease_margin = f64::INFINITY;
    let mut min_pi = f64::INFINITY;
    let mut max_h = 0.0_f64;
    for (r, &h) in res.records.iter().zip(&hess_norms) {
        min_pi = min_pi.min(r.pi);
        max_h = max_h.max(h);
        if r.rho.is_some() {
            let floor = decrease_floor(kappa_p, amin, min_pi, max_h);
            decrease_margin = decrease_margin.min(r.predicted_decrease - floor);
        }
    }
    Ok(RadiusProbeRun {
        seed,
        status: res.status,
        probe: TheoryProbe {
            c1,
            kappa_p: Some(kappa_p),
            mu_growth: Some(lipschitz),
            t_growth: 0.0,
            a_trace,
            a_min: Some(amin),
        },
        a_margin,
        decrease_margin,
    })
}
