use nalgebra::QR;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::SmoothOracle;
use crate::linalg::{Matrix, Vector};
use crate::{Error, Result};

/// `f(x) = 1/2 x^T H x + g^T x` with a known spectrum.
#[derive(Debug, Clone)]
pub struct Quadratic {
    hessian: Matrix,
    linear: Vector,
    x0: Vector,
    eigenvalues: Vec<f64>,
}

impl Quadratic {
    /// Builds a quadratic from an explicit symmetric Hessian.
    pub fn new(hessian: Matrix, linear: Vector, x0: Vector) -> Result<Self> {
        let d = hessian.nrows();
        if hessian.ncols() != d || linear.len() != d || x0.len() != d || d == 0 {
            return Err(Error::invalid("quadratic: inconsistent dimensions"));
        }
        if (&hessian - hessian.transpose()).amax() != 0.0 {
            return Err(Error::invalid("quadratic: Hessian must be symmetric"));
        }
        let eigenvalues = crate::linalg::sym_eigenvalues(&hessian);
        Ok(Quadratic {
            hessian,
            linear,
            x0,
            eigenvalues,
        })
    }

    pub fn with_linear_term(mut self, linear: Vector) -> Self {
        assert_eq!(linear.len(), self.linear.len());
        self.linear = linear;
        self
    }

    pub fn with_start(mut self, x0: Vector) -> Self {
        assert_eq!(x0.len(), self.x0.len());
        self.x0 = x0;
        self
    }

    pub fn hessian_matrix(&self) -> &Matrix {
        &self.hessian
    }

    pub fn linear_term(&self) -> &Vector {
        &self.linear
    }

    /// Eigenvalues of `H` in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `||H||`, which is also the exact Lipschitz constant of the gradient.
    pub fn hessian_norm(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0_f64, |m, l| m.max(l.abs()))
    }
}

impl SmoothOracle for Quadratic {
    fn name(&self) -> &str {
        "QUADRATIC"
    }

    fn dim(&self) -> usize {
        self.linear.len()
    }

    fn x0(&self) -> Vector {
        self.x0.clone()
    }

    fn value(&self, x: &Vector) -> f64 {
        0.5 * x.dot(&(&self.hessian * x)) + self.linear.dot(x)
    }

    fn gradient(&self, x: &Vector) -> Vector {
        &self.hessian * x + &self.linear
    }

    fn hessian(&self, _x: &Vector) -> Matrix {
        self.hessian.clone()
    }
}

/// Seeded random quadratic `H = Q diag(lambda) Q^T` with `Q` a random
/// orthogonal matrix. The spectrum always contains both `lambda_min` and
/// `lambda_max` (when `d >= 2`); interior eigenvalues are uniform between them.
/// `g` and `x0` have independent standard normal entries.
pub fn random_quadratic(d: usize, lambda_min: f64, lambda_max: f64, seed: u64) -> Result<Quadratic> {
    if d == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if !(lambda_min <= lambda_max) {
        return Err(Error::invalid(format!(
            "lambda_min ({lambda_min}) must not exceed lambda_max ({lambda_max})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spectrum: Vec<f64> = (0..d)
        .map(|i| match i {
            0 => lambda_min,
            1 => lambda_max,
            _ => rng.random_range(0.0..=1.0) * (lambda_max - lambda_min) + lambda_min,
        })
        .collect();
    spectrum.sort_by(f64::total_cmp);

    let gauss = Matrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = QR::new(gauss);
    let mut q = qr.q();
    let r = qr.r();
    // Sign fix so Q is Haar-distributed.
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    let lambda = Matrix::from_diagonal(&Vector::from_vec(spectrum.clone()));
    let h = &q * lambda * q.transpose();
    let h = 0.5 * (&h + h.transpose());

    let linear = Vector::from_fn(d, |_, _| rng.sample::<f64, _>(StandardNormal));
    let x0 = Vector::from_fn(d, |_, _| rng.sample::<f64, _>(StandardNormal));
    Ok(Quadratic {
        hessian: h,
        linear,
        x0,
        eigenvalues: spectrum,
    })
}
