//! Local composite model and the first-order stationarity measure.

use crate::linalg::{check_dim, Matrix, Vector};
use crate::problems::CompositeProblem;
use crate::regularizers::Regularizer;
use crate::{Error, Result};

/// `m(p) = c + g^T p + 1/2 p^T H p + h(x + p)`, anchored at `x`.
#[derive(Debug, Clone)]
pub struct TrustRegionModel {
    x: Vector,
    c: f64,
    g: Vector,
    h: Matrix,
    reg: Regularizer,
    h_at_x: f64,
}

impl TrustRegionModel {
    pub fn new(x: Vector, c: f64, g: Vector, h: Matrix, reg: Regularizer) -> Result<Self> {
        let d = x.len();
        check_dim(d, g.len(), "model gradient")?;
        check_dim(d, reg.dim(), "model regularizer")?;
        if h.nrows() != d || h.ncols() != d {
            return Err(Error::invalid(format!(
                "model Hessian must be {d}x{d}, got {}x{}",
                h.nrows(),
                h.ncols()
            )));
        }
        let h_at_x = reg.evaluate(&x)?;
        Ok(TrustRegionModel {
            x,
            c,
            g,
            h,
            reg,
            h_at_x,
        })
    }

    /// Model of `p` at `x` built from the exact gradient and Hessian.
    pub fn from_problem(p: &CompositeProblem, x: &Vector) -> Result<Self> {
        let f = p.smooth();
        Self::new(x.clone(), f.value(x), f.gradient(x), f.hessian(x), p.reg().clone())
    }

    /// Same model with a different Hessian.
    pub fn with_hessian(&self, h: Matrix) -> Result<Self> {
        Self::new(self.x.clone(), self.c, self.g.clone(), h, self.reg.clone())
    }

    pub fn anchor(&self) -> &Vector {
        &self.x
    }

    pub fn constant(&self) -> f64 {
        self.c
    }

    pub fn gradient(&self) -> &Vector {
        &self.g
    }

    pub fn hessian(&self) -> &Matrix {
        &self.h
    }

    pub fn reg(&self) -> &Regularizer {
        &self.reg
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// `m(p)`; `+inf` if `x + p` leaves `dom h`.
    pub fn value(&self, p: &Vector) -> Result<f64> {
        check_dim(self.dim(), p.len(), "model step")?;
        let hx = self.reg.evaluate(&(&self.x + p))?;
        Ok(self.c + self.g.dot(p) + 0.5 * p.dot(&(&self.h * p)) + hx)
    }

    /// `m(0) - m(p)`, formed without the constant term so that small
    /// decreases are not lost to cancellation against `c`.
    pub fn decrease(&self, p: &Vector) -> Result<f64> {
        check_dim(self.dim(), p.len(), "model step")?;
        let xp = &self.x + p;
        if self.reg.evaluate(&xp)? == f64::INFINITY {
            return Err(Error::InfeasibleStep);
        }
        let smooth = -(self.g.dot(p) + 0.5 * p.dot(&(&self.h * p)));
        Ok(smooth + self.reg.difference(&self.x, &xp)?)
    }

    /// `m(0) = f(x) + h(x)`.
    pub fn value_at_zero(&self) -> f64 {
        self.c + self.h_at_x
    }

    /// Point-wise proximal gradient step on the model:
    /// `Prox_{gamma h}(u - gamma (g + H (u - x)))`.
    pub(crate) fn prox_gradient_step(&self, u: &Vector, gamma: f64) -> Result<Vector> {
        let grad = &self.g + &self.h * (u - &self.x);
        self.reg.prox(gamma, &(u - gamma * grad))
    }
}

/// `model_value` as a free function.
pub fn model_value(m: &TrustRegionModel, p: &Vector) -> Result<f64> {
    m.value(p)
}

/// `model_decrease` as a free function.
pub fn model_decrease(m: &TrustRegionModel, p: &Vector) -> Result<f64> {
    m.decrease(p)
}

/// `pi(x, gamma) = ||Prox_{gamma h}(x - gamma grad f(x)) - x|| / gamma`.
pub fn stationarity_measure(p: &CompositeProblem, x: &Vector, gamma: f64) -> Result<f64> {
    stationarity_from_gradient(p.reg(), x, &p.smooth().gradient(x), gamma)
}

/// [`stationarity_measure`] when `grad f(x)` is already at hand.
pub fn stationarity_from_gradient(reg: &Regularizer, x: &Vector, grad: &Vector, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::invalid(format!("gamma must be positive, got {gamma}")));
    }
    check_dim(x.len(), grad.len(), "gradient")?;
    let u = reg.prox(gamma, &(x - gamma * grad))?;
    Ok((u - x).norm() / gamma)
}
