//! Projected proximal gradient (PPG) solver for the trust-region subproblem
//!
//! ```text
//! min_p  m(p) = c + g^T p + 1/2 p^T H p + h(x + p)   s.t.  ||p|| <= delta
//! ```
//!
//! Up to `N` proximal gradient iterations are run on `m` without the ball
//! constraint, stopping early once the iterate leaves the inflated ball of
//! radius `mu_u * delta`; the last iterate is then pulled radially back into
//! the trust region. [`ppg_with_backtracking`] wraps this in a geometric
//! search over the stepsize.

use crate::linalg::Vector;
use crate::model::TrustRegionModel;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PpgConfig {
    /// Maximum number of inner proximal gradient iterations.
    pub n: usize,
    /// Inner loop stops once `||u_i - x|| > mu_u * delta`.
    pub mu_u: f64,
    /// Backtracking factor for the stepsize, in `(0.1, 1)`.
    pub alpha: f64,
    /// Replaces the heuristic initial stepsize on the first outer iteration.
    pub gamma0_override: Option<f64>,
    pub max_backtracks: usize,
    /// Start each outer iteration from `max(previous gamma, heuristic)`
    /// instead of the previous accepted stepsize alone.
    pub gamma_refresh: bool,
}

impl Default for PpgConfig {
    fn default() -> Self {
        PpgConfig {
            n: 50,
            mu_u: 2.0,
            alpha: 0.9,
            gamma0_override: None,
            max_backtracks: 100,
            gamma_refresh: false,
        }
    }
}

impl PpgConfig {
    pub fn with_n(n: usize) -> Self {
        PpgConfig {
            n,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("ppg.N must be at least 1"));
        }
        if !(self.mu_u >= 1.0) {
            return Err(Error::invalid(format!("ppg.mu_u must be >= 1, got {}", self.mu_u)));
        }
        if !(self.alpha > 0.1 && self.alpha < 1.0) {
            return Err(Error::invalid(format!(
                "ppg.alpha must lie in (0.1, 1), got {}",
                self.alpha
            )));
        }
        if let Some(g) = self.gamma0_override {
            if !(g > 0.0 && g.is_finite()) {
                return Err(Error::invalid(format!("initial stepsize must be positive, got {g}")));
            }
        }
        if self.max_backtracks == 0 {
            return Err(Error::invalid("ppg.max_backtracks must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PpgTermination {
    IterationCap,
    RadiusEscape,
}

#[derive(Debug, Clone)]
pub struct PpgOutcome {
    pub p_star: Vector,
    /// `(u_i, m(u_i - x))` for `i = 0..=n`, starting with `u_0 = x`.
    pub inner_trace: Vec<(Vector, f64)>,
    pub gamma_used: f64,
    pub backtracks: usize,
    pub terminated_by: PpgTermination,
}

impl PpgOutcome {
    /// Number of proximal gradient iterations performed.
    pub fn inner_iters(&self) -> usize {
        self.inner_trace.len() - 1
    }
}

/// One run of the PPG method with a fixed stepsize `gamma`.
pub fn ppg_inner(m: &TrustRegionModel, delta: f64, gamma: f64, cfg: &PpgConfig) -> Result<PpgOutcome> {
    if !(delta > 0.0) {
        return Err(Error::invalid(format!(
            "trust-region radius must be positive, got {delta}"
        )));
    }
    if !(gamma > 0.0) {
        return Err(Error::invalid(format!("stepsize must be positive, got {gamma}")));
    }
    let x = m.anchor();
    let mut u = x.clone();
    let mut trace = Vec::with_capacity(cfg.n + 1);
    trace.push((u.clone(), m.value_at_zero()));
    let mut i = 0;
    while i < cfg.n && (&u - x).norm() <= cfg.mu_u * delta {
        u = m.prox_gradient_step(&u, gamma)?;
        i += 1;
        trace.push((u.clone(), m.value(&(&u - x))?));
    }
    let s = &u - x;
    let p_star = &s * (delta / delta.max(s.norm()));
    Ok(PpgOutcome {
        p_star,
        inner_trace: trace,
        gamma_used: gamma,
        backtracks: 0,
        terminated_by: if i < cfg.n {
            PpgTermination::RadiusEscape
        } else {
            PpgTermination::IterationCap
        },
    })
}

/// PPG with stepsizes `gamma_j = alpha^j gamma0`, accepting the first `j`
/// for which every inner iterate and the returned step strictly decrease the
/// model.
pub fn ppg_with_backtracking(m: &TrustRegionModel, delta: f64, cfg: &PpgConfig, gamma0: f64) -> Result<PpgOutcome> {
    if !(gamma0 > 0.0) {
        return Err(Error::invalid(format!(
            "initial stepsize must be positive, got {gamma0}"
        )));
    }
    let x = m.anchor();
    let mut gamma = gamma0;
    let mut last = None;
    for j in 0..=cfg.max_backtracks {
        let mut out = ppg_inner(m, delta, gamma, cfg)?;
        out.backtracks = j;
        if strictly_decreasing(m, x, &out)? {
            return Ok(out);
        }
        last = Some(out);
        gamma *= cfg.alpha;
    }
    Err(Error::BacktrackingFailure {
        backtracks: cfg.max_backtracks,
        best: Box::new(last.expect("at least one attempt")),
    })
}

fn strictly_decreasing(m: &TrustRegionModel, x: &Vector, out: &PpgOutcome) -> Result<bool> {
    for (u, _) in &out.inner_trace[1..] {
        match m.decrease(&(u - x)) {
            Ok(d) if d > 0.0 => {}
            Ok(_) | Err(Error::InfeasibleStep) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    match m.decrease(&out.p_star) {
        Ok(d) => Ok(d > 0.0),
        Err(Error::InfeasibleStep) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Initial stepsize `2 ||g|| / (3 ||H g||)`: the root of `1/gamma - L + lambda/2`
/// with `lambda = -L` and `L` estimated by one power iteration.
/// Falls back to 1 when `g = 0` or `H g` vanishes.
pub fn initial_gamma_heuristic(m: &TrustRegionModel) -> f64 {
    let g = m.gradient();
    let gnorm = g.norm();
    let hg = (m.hessian() * g).norm();
    if gnorm == 0.0 || hg <= 1e-300 * gnorm {
        1.0
    } else {
        2.0 * gnorm / (3.0 * hg)
    }
}

/// Geometric growth sum `R(t) = sum_{i<N} (1+t)^i = ((1+t)^N - 1) / t`,
/// with `R(0) = N`.
pub fn growth_factor(t: f64, n: usize) -> f64 {
    if t == 0.0 {
        return n as f64;
    }
    // expm1/ln_1p keep full relative accuracy for tiny t.
    ((n as f64) * t.ln_1p()).exp_m1() / t
}

/// Decrease constant
/// `theta = 1/gamma - L + lambda/2 + min(0, lambda R(gamma L)^2 / 2)`.
pub fn theta_constant(gamma: f64, l: f64, lambda: f64, n: usize) -> f64 {
    let r = growth_factor(gamma * l, n);
    1.0 / gamma - l + 0.5 * lambda + (0.5 * lambda * r * r).min(0.0)
}
