//! Smooth test functions and composite problem instances.

mod quadratic;
mod suite;

use std::fmt;
use std::sync::Arc;

pub use quadratic::{random_quadratic, Quadratic};
pub use suite::builtin_names;

use crate::linalg::{check_dim, Matrix, Vector};
use crate::regularizers::Regularizer;
use crate::{Error, Result};

/// Smooth part `f` of a composite objective, with exact first and second
/// derivatives.
pub trait SmoothOracle: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;
    fn dim(&self) -> usize;
    /// Standard starting point.
    fn x0(&self) -> Vector;
    fn value(&self, x: &Vector) -> f64;
    fn gradient(&self, x: &Vector) -> Vector;
    /// Symmetric `d x d` Hessian.
    fn hessian(&self, x: &Vector) -> Matrix;
}

/// `F = f + h` together with a starting point in `dom F`.
#[derive(Debug, Clone)]
pub struct CompositeProblem {
    name: String,
    smooth: Arc<dyn SmoothOracle>,
    reg: Regularizer,
    x0: Vector,
}

impl CompositeProblem {
    pub fn new(smooth: Arc<dyn SmoothOracle>, reg: Regularizer) -> Result<Self> {
        let x0 = smooth.x0();
        Self::with_start(smooth, reg, x0)
    }

    pub fn with_start(smooth: Arc<dyn SmoothOracle>, reg: Regularizer, x0: Vector) -> Result<Self> {
        check_dim(smooth.dim(), reg.dim(), "regularizer")?;
        check_dim(smooth.dim(), x0.len(), "starting point")?;
        let p = CompositeProblem {
            name: smooth.name().to_string(),
            smooth,
            reg,
            x0,
        };
        let f0 = p.value(&p.x0)?;
        if !f0.is_finite() {
            return Err(Error::invalid(format!("{}: F(x0) is not finite", p.name)));
        }
        Ok(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.smooth.dim()
    }

    pub fn smooth(&self) -> &dyn SmoothOracle {
        self.smooth.as_ref()
    }

    pub fn reg(&self) -> &Regularizer {
        &self.reg
    }

    pub fn x0(&self) -> &Vector {
        &self.x0
    }

    /// `F(x) = f(x) + h(x)`.
    pub fn value(&self, x: &Vector) -> Result<f64> {
        check_dim(self.dim(), x.len(), "composite argument")?;
        let h = self.reg.evaluate(x)?;
        if h == f64::INFINITY {
            return Ok(f64::INFINITY);
        }
        Ok(self.smooth.value(x) + h)
    }
}

/// Named composite value, `F(x)`, for callers holding only the problem.
pub fn composite_value(p: &CompositeProblem, x: &Vector) -> Result<f64> {
    p.value(x)
}

/// The builtin benchmark suite, each problem composed with `h = ||x||_1`.
pub fn builtin_suite() -> Vec<CompositeProblem> {
    suite::all()
        .into_iter()
        .map(|f| {
            let reg = Regularizer::l1(1.0, f.dim()).expect("suite dimensions are positive");
            CompositeProblem::new(f, reg).expect("suite starting points are in dom F")
        })
        .collect()
}

/// Looks up a builtin smooth function by (case-insensitive) name.
pub fn find_smooth(name: &str) -> Result<Arc<dyn SmoothOracle>> {
    suite::all()
        .into_iter()
        .find(|f| f.name().eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownProblem(name.to_string()))
}

/// Looks up a builtin suite problem (with `h = ||x||_1`) by name.
pub fn find_problem(name: &str) -> Result<CompositeProblem> {
    builtin_suite()
        .into_iter()
        .find(|p| p.name().eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownProblem(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock_composite_value_at_start() {
        let p = find_problem("ROSENBR").unwrap();
        let f = composite_value(&p, p.x0()).unwrap();
        assert!((f - 26.4).abs() < 1e-12, "{f}");
    }

    #[test]
    fn zero_regularizer_gives_smooth_value() {
        let f = find_smooth("BEALE").unwrap();
        let p = CompositeProblem::new(f.clone(), Regularizer::zero(2)).unwrap();
        let x = Vector::from_vec(vec![0.3, -0.7]);
        assert_eq!(p.value(&x).unwrap(), f.value(&x));
    }

    #[test]
    fn ball_indicator_outside_is_infinite() {
        let f = find_smooth("ROSENBR").unwrap();
        let ball = Regularizer::ball(Vector::zeros(2), 2.0).unwrap();
        let p = CompositeProblem::new(f, ball).unwrap();
        assert_eq!(p.value(&Vector::from_vec(vec![3.0, 0.0])).unwrap(), f64::INFINITY);
    }

    #[test]
    fn start_outside_domain_is_rejected() {
        let f = find_smooth("ROSENBR").unwrap();
        let ball = Regularizer::ball(Vector::zeros(2), 0.5).unwrap();
        assert!(CompositeProblem::new(f, ball).is_err());
    }

    #[test]
    fn suite_contents() {
        let suite = builtin_suite();
        assert!(suite.len() >= 20);
        assert!(suite.iter().any(|p| p.name() == "ROSENBR" && p.dim() == 2));
        assert!(suite.iter().all(|p| (2..=50).contains(&p.dim())));
        for required in [
            "ROSENBR", "BEALE", "BOX3", "HELIX", "POWELLSG", "CUBE", "DENSCHNA", "DENSCHNB", "DENSCHNC", "DENSCHND",
            "DENSCHNE", "DENSCHNF", "SISSER", "CLIFF", "HIMMELBB", "HIMMELBG", "HIMMELBH", "ENGVAL2", "EXPFIT",
            "JENSMP", "GULF", "BARD", "ZANGWIL2", "TRIDIA", "DQDRTIC",
        ] {
            assert!(suite.iter().any(|p| p.name() == required), "{required} missing");
        }
        assert_eq!(find_problem("POWELLSG").unwrap().dim(), 16);
        assert_eq!(find_problem("TRIDIA").unwrap().dim(), 20);
        assert_eq!(find_problem("DQDRTIC").unwrap().dim(), 10);
    }

    #[test]
    fn unknown_problem() {
        assert!(matches!(find_problem("NOPE"), Err(Error::UnknownProblem(_))));
    }
}
