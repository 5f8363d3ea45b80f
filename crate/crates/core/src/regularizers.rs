//! Convex regularizers `h` with closed-form proximity operators.

use crate::linalg::{check_dim, Vector};
use crate::{Error, Result};

/// Relative slack used when testing membership of the ball indicator, so that
/// projections rounded a few ulps outside the ball still count as feasible.
const BALL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum RegularizerKind {
    /// `weight * ||x||_1`
    L1 {
        weight: f64,
    },
    Zero,
    /// `(weight / 2) * ||x||^2`
    SquaredL2 {
        weight: f64,
    },
    /// Indicator of the closed ball `{x : ||x - center|| <= radius}`.
    Ball {
        center: Vector,
        radius: f64,
    },
}

/// A proper, lower semicontinuous, convex, nonnegative function on `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Regularizer {
    kind: RegularizerKind,
    dim: usize,
}

impl Regularizer {
    pub fn new(kind: RegularizerKind, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("regularizer dimension must be positive"));
        }
        match &kind {
            RegularizerKind::L1 { weight } | RegularizerKind::SquaredL2 { weight } => {
                if !(weight.is_finite() && *weight >= 0.0) {
                    return Err(Error::invalid(format!("weight must be finite and >= 0, got {weight}")));
                }
            }
            RegularizerKind::Zero => {}
            RegularizerKind::Ball { center, radius } => {
                check_dim(dim, center.len(), "ball center")?;
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(Error::invalid(format!("ball radius must be positive, got {radius}")));
                }
            }
        }
        Ok(Regularizer { kind, dim })
    }

    pub fn l1(weight: f64, dim: usize) -> Result<Self> {
        Self::new(RegularizerKind::L1 { weight }, dim)
    }

    pub fn zero(dim: usize) -> Self {
        Regularizer {
            kind: RegularizerKind::Zero,
            dim,
        }
    }

    pub fn squared_l2(weight: f64, dim: usize) -> Result<Self> {
        Self::new(RegularizerKind::SquaredL2 { weight }, dim)
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        let dim = center.len();
        Self::new(RegularizerKind::Ball { center, radius }, dim)
    }

    pub fn kind(&self) -> &RegularizerKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Same kind and parameters, re-targeted to dimension `dim`. Ball
    /// indicators keep their center only if it already has that dimension.
    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        Self::new(self.kind.clone(), dim)
    }

    /// `h(x)`; `+inf` exactly when `x` violates an indicator constraint.
    pub fn evaluate(&self, x: &Vector) -> Result<f64> {
        check_dim(self.dim, x.len(), "regularizer argument")?;
        Ok(match &self.kind {
            RegularizerKind::L1 { weight } => weight * x.lp_norm(1),
            RegularizerKind::Zero => 0.0,
            RegularizerKind::SquaredL2 { weight } => 0.5 * weight * x.norm_squared(),
            RegularizerKind::Ball { center, radius } => {
                if (x - center).norm() <= radius * (1.0 + BALL_SLACK) {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        })
    }

    /// `h(x) - h(y)`, accumulated coordinate-wise for separable kinds so that
    /// small differences between nearby points keep their precision.
    pub fn difference(&self, x: &Vector, y: &Vector) -> Result<f64> {
        check_dim(self.dim, x.len(), "regularizer argument")?;
        check_dim(self.dim, y.len(), "regularizer argument")?;
        Ok(match &self.kind {
            RegularizerKind::L1 { weight } => {
                weight * x.iter().zip(y.iter()).map(|(a, b)| a.abs() - b.abs()).sum::<f64>()
            }
            RegularizerKind::Zero => 0.0,
            RegularizerKind::SquaredL2 { weight } => {
                0.5 * weight * x.iter().zip(y.iter()).map(|(a, b)| (a - b) * (a + b)).sum::<f64>()
            }
            RegularizerKind::Ball { .. } => self.evaluate(x)? - self.evaluate(y)?,
        })
    }

    /// `Prox_{gamma h}(x) = argmin_z h(z) + ||z - x||^2 / (2 gamma)`.
    pub fn prox(&self, gamma: f64, x: &Vector) -> Result<Vector> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::invalid(format!("prox parameter must be positive, got {gamma}")));
        }
        check_dim(self.dim, x.len(), "prox argument")?;
        Ok(match &self.kind {
            RegularizerKind::L1 { weight } => {
                let t = gamma * weight;
                x.map(|xi| soft_threshold(xi, t))
            }
            RegularizerKind::Zero => x.clone(),
            RegularizerKind::SquaredL2 { weight } => x / (1.0 + gamma * weight),
            RegularizerKind::Ball { center, radius } => project_ball(center, *radius, x),
        })
    }
}

#[inline]
pub fn soft_threshold(x: f64, t: f64) -> f64 {
    if x > t {
        x - t
    } else if x < -t {
        x + t
    } else {
        0.0
    }
}

fn project_ball(center: &Vector, radius: f64, x: &Vector) -> Vector {
    let offset = x - center;
    let dist = offset.norm();
    center + offset * (radius / dist.max(radius))
}

/// Reference prox computed without the closed forms above: golden-section
/// search per coordinate for the separable kinds, radial projection for the
/// ball. Used as an independent check on [`Regularizer::prox`].
pub fn prox_bruteforce_oracle(reg: &Regularizer, gamma: f64, x: &Vector, tol: f64) -> Result<Vector> {
    if !(gamma > 0.0) {
        return Err(Error::invalid("prox parameter must be positive"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    check_dim(reg.dim, x.len(), "prox argument")?;
    let scalar_h: fn(f64, f64) -> f64 = match reg.kind {
        RegularizerKind::L1 { .. } => |w, z| w * z.abs(),
        RegularizerKind::Zero => |_, _| 0.0,
        RegularizerKind::SquaredL2 { .. } => |w, z| 0.5 * w * z * z,
        RegularizerKind::Ball { ref center, radius, .. } => {
            let offset = x - center;
            let scale = radius / offset.norm().max(radius);
            return Ok(center + offset * scale);
        }
    };
    let weight = match reg.kind {
        RegularizerKind::L1 { weight } | RegularizerKind::SquaredL2 { weight } => weight,
        _ => 0.0,
    };
    Ok(x.map(|xi| {
        let half_width = 10.0 * (1.0 + xi.abs());
        golden_section(
            |z| scalar_h(weight, z) + (z - xi) * (z - xi) / (2.0 * gamma),
            xi - half_width,
            xi + half_width,
            tol,
        )
    }))
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
