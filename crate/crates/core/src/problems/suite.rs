//! Classical unconstrained test functions (CUTEst / Moré–Garbow–Hillstrom
//! definitions) with hand-derived gradients and Hessians.
//!
//! Most problems are sums of squares `f = c + sum_i r_i(x)^2`; those are
//! described by their residuals, each carrying a sparse gradient and Hessian,
//! and [`LeastSquares`] assembles `grad f = 2 sum r_i grad r_i` and
//! `hess f = 2 sum (grad r_i grad r_i^T + r_i hess r_i)`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use super::SmoothOracle;
use crate::linalg::{Matrix, Vector};

/// One residual with sparse first and second derivatives.
struct Residual {
    value: f64,
    grad: Vec<(usize, f64)>,
    /// Upper-triangle entries `(i, j, v)` with `i <= j`.
    hess: Vec<(usize, usize, f64)>,
}

impl Residual {
    fn new(value: f64) -> Self {
        Residual {
            value,
            grad: Vec::new(),
            hess: Vec::new(),
        }
    }

    fn d(mut self, i: usize, v: f64) -> Self {
        self.grad.push((i, v));
        self
    }

    fn h(mut self, i: usize, j: usize, v: f64) -> Self {
        self.hess.push((i.min(j), i.max(j), v));
        self
    }
}

type ResidualFn = fn(&[f64]) -> Vec<Residual>;

struct LeastSquares {
    name: &'static str,
    x0: Vec<f64>,
    offset: f64,
    residuals: ResidualFn,
}

impl fmt::Debug for LeastSquares {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LeastSquares")
            .field("name", &self.name)
            .field("dim", &self.x0.len())
            .finish()
    }
}

impl SmoothOracle for LeastSquares {
    fn name(&self) -> &str {
        self.name
    }

    fn dim(&self) -> usize {
        self.x0.len()
    }

    fn x0(&self) -> Vector {
        Vector::from_column_slice(&self.x0)
    }

    fn value(&self, x: &Vector) -> f64 {
        self.offset
            + (self.residuals)(x.as_slice())
                .iter()
                .map(|r| r.value * r.value)
                .sum::<f64>()
    }

    fn gradient(&self, x: &Vector) -> Vector {
        let mut g = Vector::zeros(x.len());
        for r in (self.residuals)(x.as_slice()) {
            for &(i, v) in &r.grad {
                g[i] += 2.0 * r.value * v;
            }
        }
        g
    }

    fn hessian(&self, x: &Vector) -> Matrix {
        let d = x.len();
        let mut h = Matrix::zeros(d, d);
        for r in (self.residuals)(x.as_slice()) {
            for &(i, vi) in &r.grad {
                for &(j, vj) in &r.grad {
                    h[(i, j)] += 2.0 * vi * vj;
                }
            }
            for &(i, j, v) in &r.hess {
                h[(i, j)] += 2.0 * r.value * v;
                if i != j {
                    h[(j, i)] += 2.0 * r.value * v;
                }
            }
        }
        h
    }
}

/// A function given directly by value, gradient and Hessian formulas.
struct Explicit {
    name: &'static str,
    x0: Vec<f64>,
    value: fn(&[f64]) -> f64,
    gradient: fn(&[f64]) -> Vec<f64>,
    hessian: fn(&[f64]) -> Matrix,
}

impl fmt::Debug for Explicit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Explicit")
            .field("name", &self.name)
            .field("dim", &self.x0.len())
            .finish()
    }
}

impl SmoothOracle for Explicit {
    fn name(&self) -> &str {
        self.name
    }

    fn dim(&self) -> usize {
        self.x0.len()
    }

    fn x0(&self) -> Vector {
        Vector::from_column_slice(&self.x0)
    }

    fn value(&self, x: &Vector) -> f64 {
        (self.value)(x.as_slice())
    }

    fn gradient(&self, x: &Vector) -> Vector {
        Vector::from_vec((self.gradient)(x.as_slice()))
    }

    fn hessian(&self, x: &Vector) -> Matrix {
        (self.hessian)(x.as_slice())
    }
}

fn ls(name: &'static str, x0: Vec<f64>, residuals: ResidualFn) -> Arc<dyn SmoothOracle> {
    Arc::new(LeastSquares {
        name,
        x0,
        offset: 0.0,
        residuals,
    })
}

fn explicit(
    name: &'static str,
    x0: Vec<f64>,
    value: fn(&[f64]) -> f64,
    gradient: fn(&[f64]) -> Vec<f64>,
    hessian: fn(&[f64]) -> Matrix,
) -> Arc<dyn SmoothOracle> {
    Arc::new(Explicit {
        name,
        x0,
        value,
        gradient,
        hessian,
    })
}

fn sym2(a: f64, b: f64, c: f64) -> Matrix {
    Matrix::from_row_slice(2, 2, &[a, b, b, c])
}

/// Names of the builtin suite problems, in suite order.
pub fn builtin_names() -> Vec<String> {
    all().iter().map(|f| f.name().to_string()).collect()
}

pub(super) fn all() -> Vec<Arc<dyn SmoothOracle>> {
    vec![
        // 100 (x2 - x1^2)^2 + (1 - x1)^2, x0 = (-1.2, 1)
        ls("ROSENBR", vec![-1.2, 1.0], |x| {
            vec![
                Residual::new(10.0 * (x[1] - x[0] * x[0]))
                    .d(0, -20.0 * x[0])
                    .d(1, 10.0)
                    .h(0, 0, -20.0),
                Residual::new(1.0 - x[0]).d(0, -1.0),
            ]
        }),
        // sum_{i=1..3} (c_i - x1 (1 - x2^i))^2, x0 = (1, 1)
        ls("BEALE", vec![1.0, 1.0], |x| {
            [1.5, 2.25, 2.625]
                .iter()
                .enumerate()
                .map(|(k, &c)| {
                    let i = (k + 1) as i32;
                    let fi = i as f64;
                    Residual::new(c - x[0] * (1.0 - x[1].powi(i)))
                        .d(0, -(1.0 - x[1].powi(i)))
                        .d(1, x[0] * fi * x[1].powi(i - 1))
                        .h(0, 1, fi * x[1].powi(i - 1))
                        .h(
                            1,
                            1,
                            if i > 1 {
                                x[0] * fi * (fi - 1.0) * x[1].powi(i - 2)
                            } else {
                                0.0
                            },
                        )
                })
                .collect()
        }),
        // Box three-dimensional, 10 residuals, x0 = (0, 10, 20)
        ls("BOX3", vec![0.0, 10.0, 20.0], |x| {
            (1..=10)
                .map(|i| {
                    let t = 0.1 * i as f64;
                    let e1 = (-t * x[0]).exp();
                    let e2 = (-t * x[1]).exp();
                    let c = (-t).exp() - (-10.0 * t).exp();
                    Residual::new(e1 - e2 - x[2] * c)
                        .d(0, -t * e1)
                        .d(1, t * e2)
                        .d(2, -c)
                        .h(0, 0, t * t * e1)
                        .h(1, 1, -t * t * e2)
                })
                .collect()
        }),
        // Helical valley, x0 = (-1, 0, 0)
        ls("HELIX", vec![-1.0, 0.0, 0.0], |x| {
            let (a, b) = (x[0], x[1]);
            let s = a * a + b * b;
            let theta = (b / a).atan() / (2.0 * PI) + if a < 0.0 { 0.5 } else { 0.0 };
            let t1 = -b / (2.0 * PI * s);
            let t2 = a / (2.0 * PI * s);
            let t11 = a * b / (PI * s * s);
            let t12 = (b * b - a * a) / (2.0 * PI * s * s);
            let r = s.sqrt();
            vec![
                Residual::new(10.0 * (x[2] - 10.0 * theta))
                    .d(0, -100.0 * t1)
                    .d(1, -100.0 * t2)
                    .d(2, 10.0)
                    .h(0, 0, -100.0 * t11)
                    .h(0, 1, -100.0 * t12)
                    .h(1, 1, 100.0 * t11),
                Residual::new(10.0 * (r - 1.0))
                    .d(0, 10.0 * a / r)
                    .d(1, 10.0 * b / r)
                    .h(0, 0, 10.0 * (1.0 / r - a * a / (s * r)))
                    .h(0, 1, -10.0 * a * b / (s * r))
                    .h(1, 1, 10.0 * (1.0 / r - b * b / (s * r))),
                Residual::new(x[2]).d(2, 1.0),
            ]
        }),
        // Extended Powell singular function, N = 16, x0 = (3, -1, 0, 1, ...)
        ls("POWELLSG", [3.0, -1.0, 0.0, 1.0].repeat(4), |x| {
            let s5 = 5.0_f64.sqrt();
            let s10 = 10.0_f64.sqrt();
            let mut out = Vec::with_capacity(x.len());
            for a in (0..x.len()).step_by(4) {
                let q3 = x[a + 1] - 2.0 * x[a + 2];
                let q4 = x[a] - x[a + 3];
                out.push(Residual::new(x[a] + 10.0 * x[a + 1]).d(a, 1.0).d(a + 1, 10.0));
                out.push(Residual::new(s5 * (x[a + 2] - x[a + 3])).d(a + 2, s5).d(a + 3, -s5));
                out.push(
                    Residual::new(q3 * q3)
                        .d(a + 1, 2.0 * q3)
                        .d(a + 2, -4.0 * q3)
                        .h(a + 1, a + 1, 2.0)
                        .h(a + 1, a + 2, -4.0)
                        .h(a + 2, a + 2, 8.0),
                );
                out.push(
                    Residual::new(s10 * q4 * q4)
                        .d(a, 2.0 * s10 * q4)
                        .d(a + 3, -2.0 * s10 * q4)
                        .h(a, a, 2.0 * s10)
                        .h(a, a + 3, -2.0 * s10)
                        .h(a + 3, a + 3, 2.0 * s10),
                );
            }
            out
        }),
        // (x1 - 1)^2 + 100 (x2 - x1^3)^2, x0 = (-1.2, 1)
        ls("CUBE", vec![-1.2, 1.0], |x| {
            vec![
                Residual::new(x[0] - 1.0).d(0, 1.0),
                Residual::new(10.0 * (x[1] - x[0].powi(3)))
                    .d(0, -30.0 * x[0] * x[0])
                    .d(1, 10.0)
                    .h(0, 0, -60.0 * x[0]),
            ]
        }),
        // x1^4 + (x1 + x2)^2 + (exp(x2) - 1)^2, x0 = (1, 1)
        ls("DENSCHNA", vec![1.0, 1.0], |x| {
            let e = x[1].exp();
            vec![
                Residual::new(x[0] * x[0]).d(0, 2.0 * x[0]).h(0, 0, 2.0),
                Residual::new(x[0] + x[1]).d(0, 1.0).d(1, 1.0),
                Residual::new(e - 1.0).d(1, e).h(1, 1, e),
            ]
        }),
        // (x1 - 2)^2 + (x1 - 2)^2 x2^2 + (x2 + 1)^2, x0 = (1, 1)
        ls("DENSCHNB", vec![1.0, 1.0], |x| {
            vec![
                Residual::new(x[0] - 2.0).d(0, 1.0),
                Residual::new((x[0] - 2.0) * x[1])
                    .d(0, x[1])
                    .d(1, x[0] - 2.0)
                    .h(0, 1, 1.0),
                Residual::new(x[1] + 1.0).d(1, 1.0),
            ]
        }),
        // (x1^2 + x2^2 - 2)^2 + (exp(x1 - 1) + x2^3 - 2)^2, x0 = (2, 3)
        ls("DENSCHNC", vec![2.0, 3.0], |x| {
            let e = (x[0] - 1.0).exp();
            vec![
                Residual::new(x[0] * x[0] + x[1] * x[1] - 2.0)
                    .d(0, 2.0 * x[0])
                    .d(1, 2.0 * x[1])
                    .h(0, 0, 2.0)
                    .h(1, 1, 2.0),
                Residual::new(e + x[1].powi(3) - 2.0)
                    .d(0, e)
                    .d(1, 3.0 * x[1] * x[1])
                    .h(0, 0, e)
                    .h(1, 1, 6.0 * x[1]),
            ]
        }),
        // (x1^2 + x2^3 - x3^4)^2 + (2 x1 x2 x3)^2 + (2 x1 x2 - 3 x2 x3 + x1 x3)^2,
        // x0 = (10, 10, 10)
        ls("DENSCHND", vec![10.0, 10.0, 10.0], |x| {
            let (a, b, c) = (x[0], x[1], x[2]);
            vec![
                Residual::new(a * a + b.powi(3) - c.powi(4))
                    .d(0, 2.0 * a)
                    .d(1, 3.0 * b * b)
                    .d(2, -4.0 * c.powi(3))
                    .h(0, 0, 2.0)
                    .h(1, 1, 6.0 * b)
                    .h(2, 2, -12.0 * c * c),
                Residual::new(2.0 * a * b * c)
                    .d(0, 2.0 * b * c)
                    .d(1, 2.0 * a * c)
                    .d(2, 2.0 * a * b)
                    .h(0, 1, 2.0 * c)
                    .h(0, 2, 2.0 * b)
                    .h(1, 2, 2.0 * a),
                Residual::new(2.0 * a * b - 3.0 * b * c + a * c)
                    .d(0, 2.0 * b + c)
                    .d(1, 2.0 * a - 3.0 * c)
                    .d(2, a - 3.0 * b)
                    .h(0, 1, 2.0)
                    .h(0, 2, 1.0)
                    .h(1, 2, -3.0),
            ]
        }),
        // x1^2 + (x2 + x2^2)^2 + (exp(x3) - 1)^2, x0 = (2, 3, -8)
        ls("DENSCHNE", vec![2.0, 3.0, -8.0], |x| {
            let e = x[2].exp();
            vec![
                Residual::new(x[0]).d(0, 1.0),
                Residual::new(x[1] + x[1] * x[1]).d(1, 1.0 + 2.0 * x[1]).h(1, 1, 2.0),
                Residual::new(e - 1.0).d(2, e).h(2, 2, e),
            ]
        }),
        // (2 (x1 + x2)^2 + (x1 - x2)^2 - 8)^2 + (5 x1^2 + (x2 - 3)^2 - 9)^2, x0 = (2, 0)
        ls("DENSCHNF", vec![2.0, 0.0], |x| {
            let (a, b) = (x[0], x[1]);
            vec![
                Residual::new(2.0 * (a + b).powi(2) + (a - b).powi(2) - 8.0)
                    .d(0, 6.0 * a + 2.0 * b)
                    .d(1, 2.0 * a + 6.0 * b)
                    .h(0, 0, 6.0)
                    .h(0, 1, 2.0)
                    .h(1, 1, 6.0),
                Residual::new(5.0 * a * a + (b - 3.0).powi(2) - 9.0)
                    .d(0, 10.0 * a)
                    .d(1, 2.0 * (b - 3.0))
                    .h(0, 0, 10.0)
                    .h(1, 1, 2.0),
            ]
        }),
        // 3 x1^4 - 2 x1^2 x2^2 + 3 x2^4, x0 = (1, 0.1)
        explicit(
            "SISSER",
            vec![1.0, 0.1],
            |x| 3.0 * x[0].powi(4) - 2.0 * x[0] * x[0] * x[1] * x[1] + 3.0 * x[1].powi(4),
            |x| {
                vec![
                    12.0 * x[0].powi(3) - 4.0 * x[0] * x[1] * x[1],
                    -4.0 * x[0] * x[0] * x[1] + 12.0 * x[1].powi(3),
                ]
            },
            |x| {
                sym2(
                    36.0 * x[0] * x[0] - 4.0 * x[1] * x[1],
                    -8.0 * x[0] * x[1],
                    -4.0 * x[0] * x[0] + 36.0 * x[1] * x[1],
                )
            },
        ),
        // ((x1 - 3) / 100)^2 - (x1 - x2) + exp(20 (x1 - x2)), x0 = (0, -1)
        explicit(
            "CLIFF",
            vec![0.0, -1.0],
            |x| ((x[0] - 3.0) / 100.0).powi(2) - (x[0] - x[1]) + (20.0 * (x[0] - x[1])).exp(),
            |x| {
                let e = (20.0 * (x[0] - x[1])).exp();
                vec![2.0 * (x[0] - 3.0) / 1e4 - 1.0 + 20.0 * e, 1.0 - 20.0 * e]
            },
            |x| {
                let e = (20.0 * (x[0] - x[1])).exp();
                sym2(2e-4 + 400.0 * e, -400.0 * e, 400.0 * e)
            },
        ),
        // (x1 x2 (1 - x1) (1 - x2 - x1 (1 - x1)^5))^2, x0 = (-1.2, 1)
        ls("HIMMELBB", vec![-1.2, 1.0], |x| {
            let (p, q) = (x[0], x[1]);
            let w = 1.0 - p;
            let a = p * q * w;
            let (a1, a2) = (q * (1.0 - 2.0 * p), p * w);
            let (a11, a12) = (-2.0 * q, 1.0 - 2.0 * p);
            let b = 1.0 - q - p * w.powi(5);
            let b1 = -(w.powi(4) * (1.0 - 6.0 * p));
            let b2 = -1.0;
            let b11 = -(w.powi(3) * (30.0 * p - 10.0));
            vec![Residual::new(a * b)
                .d(0, a1 * b + a * b1)
                .d(1, a2 * b + a * b2)
                .h(0, 0, a11 * b + 2.0 * a1 * b1 + a * b11)
                .h(0, 1, a12 * b + a1 * b2 + a2 * b1)
                .h(1, 1, 2.0 * a2 * b2)]
        }),
        // (2 x1^2 + 3 x2^2) exp(-x1 - x2), x0 = (0.5, 0.5)
        explicit(
            "HIMMELBG",
            vec![0.5, 0.5],
            |x| (2.0 * x[0] * x[0] + 3.0 * x[1] * x[1]) * (-x[0] - x[1]).exp(),
            |x| {
                let q = 2.0 * x[0] * x[0] + 3.0 * x[1] * x[1];
                let e = (-x[0] - x[1]).exp();
                vec![(4.0 * x[0] - q) * e, (6.0 * x[1] - q) * e]
            },
            |x| {
                let q = 2.0 * x[0] * x[0] + 3.0 * x[1] * x[1];
                let e = (-x[0] - x[1]).exp();
                sym2(
                    (4.0 - 8.0 * x[0] + q) * e,
                    (q - 4.0 * x[0] - 6.0 * x[1]) * e,
                    (6.0 - 12.0 * x[1] + q) * e,
                )
            },
        ),
        // -3 x1 - 2 x2 + 2 + x1^3 + x2^2, x0 = (0, 2)
        explicit(
            "HIMMELBH",
            vec![0.0, 2.0],
            |x| -3.0 * x[0] - 2.0 * x[1] + 2.0 + x[0].powi(3) + x[1] * x[1],
            |x| vec![-3.0 + 3.0 * x[0] * x[0], -2.0 + 2.0 * x[1]],
            |x| sym2(6.0 * x[0], 0.0, 2.0),
        ),
        // ENGVAL2, five residuals, x0 = (1, 2, 0)
        ls("ENGVAL2", vec![1.0, 2.0, 0.0], |x| {
            let (a, b, c) = (x[0], x[1], x[2]);
            let q = 5.0 * c - a + 1.0;
            vec![
                Residual::new(a * a + b * b + c * c - 1.0)
                    .d(0, 2.0 * a)
                    .d(1, 2.0 * b)
                    .d(2, 2.0 * c)
                    .h(0, 0, 2.0)
                    .h(1, 1, 2.0)
                    .h(2, 2, 2.0),
                Residual::new(a * a + b * b + (c - 2.0).powi(2) - 1.0)
                    .d(0, 2.0 * a)
                    .d(1, 2.0 * b)
                    .d(2, 2.0 * (c - 2.0))
                    .h(0, 0, 2.0)
                    .h(1, 1, 2.0)
                    .h(2, 2, 2.0),
                Residual::new(a + b + c - 1.0).d(0, 1.0).d(1, 1.0).d(2, 1.0),
                Residual::new(a + b - c + 1.0).d(0, 1.0).d(1, 1.0).d(2, -1.0),
                Residual::new(a.powi(3) + 3.0 * b * b + q * q - 36.0)
                    .d(0, 3.0 * a * a - 2.0 * q)
                    .d(1, 6.0 * b)
                    .d(2, 10.0 * q)
                    .h(0, 0, 6.0 * a + 2.0)
                    .h(0, 2, -10.0)
                    .h(1, 1, 6.0)
                    .h(2, 2, 50.0),
            ]
        }),
        // sum_{i=1..10} (x1 exp(x2 t_i) - t_i)^2 with t_i = 0.25 i, x0 = (0, 0)
        ls("EXPFIT", vec![0.0, 0.0], |x| {
            (1..=10)
                .map(|i| {
                    let t = 0.25 * i as f64;
                    let e = (x[1] * t).exp();
                    Residual::new(x[0] * e - t)
                        .d(0, e)
                        .d(1, x[0] * t * e)
                        .h(0, 1, t * e)
                        .h(1, 1, x[0] * t * t * e)
                })
                .collect()
        }),
        // Jennrich–Sampson: sum_{i=1..10} (2 + 2i - exp(i x1) - exp(i x2))^2, x0 = (0.3, 0.4)
        ls("JENSMP", vec![0.3, 0.4], |x| {
            (1..=10)
                .map(|i| {
                    let fi = i as f64;
                    let e1 = (fi * x[0]).exp();
                    let e2 = (fi * x[1]).exp();
                    Residual::new(2.0 + 2.0 * fi - e1 - e2)
                        .d(0, -fi * e1)
                        .d(1, -fi * e2)
                        .h(0, 0, -fi * fi * e1)
                        .h(1, 1, -fi * fi * e2)
                })
                .collect()
        }),
        // Gulf research and development, 99 residuals, x0 = (5, 2.5, 0.15)
        ls("GULF", vec![5.0, 2.5, 0.15], |x| {
            let (x1, x2, x3) = (x[0], x[1], x[2]);
            (1..=99)
                .map(|i| {
                    let t = i as f64 / 100.0;
                    let y = 25.0 + (-50.0 * t.ln()).powf(2.0 / 3.0);
                    let diff = y - x2;
                    let u = diff.abs();
                    let sigma = -diff.signum();
                    let lu = u.ln();
                    let w = u.powf(x3);
                    let w2 = x3 * u.powf(x3 - 1.0) * sigma;
                    let w3 = w * lu;
                    let w22 = x3 * (x3 - 1.0) * u.powf(x3 - 2.0);
                    let w23 = sigma * u.powf(x3 - 1.0) * (1.0 + x3 * lu);
                    let w33 = w * lu * lu;
                    // z = w / x1, r = exp(-z) - t
                    let z = w / x1;
                    let dz = [-w / (x1 * x1), w2 / x1, w3 / x1];
                    let z11 = 2.0 * w / x1.powi(3);
                    let z12 = -w2 / (x1 * x1);
                    let z13 = -w3 / (x1 * x1);
                    let (z22, z23, z33) = (w22 / x1, w23 / x1, w33 / x1);
                    let e = (-z).exp();
                    Residual::new(e - t)
                        .d(0, -e * dz[0])
                        .d(1, -e * dz[1])
                        .d(2, -e * dz[2])
                        .h(0, 0, e * (dz[0] * dz[0] - z11))
                        .h(0, 1, e * (dz[0] * dz[1] - z12))
                        .h(0, 2, e * (dz[0] * dz[2] - z13))
                        .h(1, 1, e * (dz[1] * dz[1] - z22))
                        .h(1, 2, e * (dz[1] * dz[2] - z23))
                        .h(2, 2, e * (dz[2] * dz[2] - z33))
                })
                .collect()
        }),
        // Bard, 15 residuals, x0 = (1, 1, 1)
        ls("BARD", vec![1.0, 1.0, 1.0], |x| {
            const Y: [f64; 15] = [
                0.14, 0.18, 0.22, 0.25, 0.29, 0.32, 0.35, 0.39, 0.37, 0.58, 0.73, 0.96, 1.34, 2.10, 4.39,
            ];
            Y.iter()
                .enumerate()
                .map(|(k, &y)| {
                    let u = (k + 1) as f64;
                    let v = 16.0 - u;
                    let w = u.min(v);
                    let den = v * x[1] + w * x[2];
                    let d2 = den * den;
                    let d3 = d2 * den;
                    Residual::new(y - (x[0] + u / den))
                        .d(0, -1.0)
                        .d(1, u * v / d2)
                        .d(2, u * w / d2)
                        .h(1, 1, -2.0 * u * v * v / d3)
                        .h(1, 2, -2.0 * u * v * w / d3)
                        .h(2, 2, -2.0 * u * w * w / d3)
                })
                .collect()
        }),
        // (16 x1^2 + 16 x2^2 - 8 x1 x2 - 56 x1 - 256 x2 + 991) / 15, x0 = (3, 8)
        explicit(
            "ZANGWIL2",
            vec![3.0, 8.0],
            |x| {
                (16.0 * x[0] * x[0] + 16.0 * x[1] * x[1] - 8.0 * x[0] * x[1] - 56.0 * x[0] - 256.0 * x[1] + 991.0)
                    / 15.0
            },
            |x| {
                vec![
                    (32.0 * x[0] - 8.0 * x[1] - 56.0) / 15.0,
                    (32.0 * x[1] - 8.0 * x[0] - 256.0) / 15.0,
                ]
            },
            |_| sym2(32.0 / 15.0, -8.0 / 15.0, 32.0 / 15.0),
        ),
        // (x1 - 1)^2 + sum_{i=2..n} i (2 x_i - x_{i-1})^2, n = 20, x0 = 1
        ls("TRIDIA", vec![1.0; 20], |x| {
            let mut out = vec![Residual::new(x[0] - 1.0).d(0, 1.0)];
            for i in 1..x.len() {
                let s = ((i + 1) as f64).sqrt();
                out.push(Residual::new(s * (2.0 * x[i] - x[i - 1])).d(i, 2.0 * s).d(i - 1, -s));
            }
            out
        }),
        // sum_{i=1..n-2} (100 x_{i+1}^2 + 100 x_{i+2}^2 + x_i^2), n = 10, x0 = 3
        explicit(
            "DQDRTIC",
            vec![3.0; 10],
            |x| {
                let c = dqdrtic_coefficients(x.len());
                x.iter().zip(&c).map(|(xi, ci)| ci * xi * xi).sum()
            },
            |x| {
                let c = dqdrtic_coefficients(x.len());
                x.iter().zip(&c).map(|(xi, ci)| 2.0 * ci * xi).collect()
            },
            |x| {
                let c = dqdrtic_coefficients(x.len());
                Matrix::from_diagonal(&Vector::from_iterator(c.len(), c.iter().map(|ci| 2.0 * ci)))
            },
        ),
        // 1 + sum_{i=2..n} 100 (x_i - x_{i-1}^2)^2 + (x_i - 1)^2, n = 5, x0_i = i / (n + 1)
        Arc::new(LeastSquares {
            name: "GENROSE",
            x0: (1..=5).map(|i| i as f64 / 6.0).collect(),
            offset: 1.0,
            residuals: |x| {
                let mut out = Vec::with_capacity(2 * x.len());
                for i in 1..x.len() {
                    out.push(
                        Residual::new(10.0 * (x[i] - x[i - 1] * x[i - 1]))
                            .d(i, 10.0)
                            .d(i - 1, -20.0 * x[i - 1])
                            .h(i - 1, i - 1, -20.0),
                    );
                    out.push(Residual::new(x[i] - 1.0).d(i, 1.0));
                }
                out
            },
        }),
        // sum_i 4 (x_i^2 - x_1)^2 + (x_i - 1)^2, n = 36, x0 = 4
        ls("LIARWHD", vec![4.0; 36], |x| {
            let mut out = Vec::with_capacity(2 * x.len());
            for i in 0..x.len() {
                let r = Residual::new(2.0 * (x[i] * x[i] - x[0]));
                let r = if i == 0 {
                    r.d(0, 4.0 * x[0] - 2.0).h(0, 0, 4.0)
                } else {
                    r.d(i, 4.0 * x[i]).d(0, -2.0).h(i, i, 4.0)
                };
                out.push(r);
                out.push(Residual::new(x[i] - 1.0).d(i, 1.0));
            }
            out
        }),
        // sum_i (x_i - i)^4, n = 25, x0 = 2
        explicit(
            "QUARTC",
            vec![2.0; 25],
            |x| x.iter().enumerate().map(|(i, xi)| (xi - (i + 1) as f64).powi(4)).sum(),
            |x| {
                x.iter()
                    .enumerate()
                    .map(|(i, xi)| 4.0 * (xi - (i + 1) as f64).powi(3))
                    .collect()
            },
            |x| {
                Matrix::from_diagonal(&Vector::from_iterator(
                    x.len(),
                    x.iter().enumerate().map(|(i, xi)| 12.0 * (xi - (i + 1) as f64).powi(2)),
                ))
            },
        ),
        // sum_i (x_i - i)^4, n = 10, x0 = 2
        ls("DQRTIC", vec![2.0; 10], |x| {
            (0..x.len())
                .map(|i| {
                    let s = x[i] - (i + 1) as f64;
                    Residual::new(s * s).d(i, 2.0 * s).h(i, i, 2.0)
                })
                .collect()
        }),
        // (x1 - 1)^2 + sum_{j=2..n-1} (x_j - x_{j+1})^2 + (x_n - 1)^2, n = 10, x0 = -1
        ls("DIXON3DQ", vec![-1.0; 10], |x| {
            let n = x.len();
            let mut out = vec![Residual::new(x[0] - 1.0).d(0, 1.0)];
            for j in 1..n - 1 {
                out.push(Residual::new(x[j] - x[j + 1]).d(j, 1.0).d(j + 1, -1.0));
            }
            out.push(Residual::new(x[n - 1] - 1.0).d(n - 1, 1.0));
            out
        }),
        // 16 + sum_{i<n} (x_i - 2)^4 + (x_i x_{i+1} - 2 x_{i+1})^2 + (x_{i+1} + 1)^2, n = 36, x0 = 0
        Arc::new(LeastSquares {
            name: "EDENSCH",
            x0: vec![0.0; 36],
            offset: 16.0,
            residuals: |x| {
                let mut out = Vec::with_capacity(3 * x.len());
                for i in 0..x.len() - 1 {
                    let s = x[i] - 2.0;
                    out.push(Residual::new(s * s).d(i, 2.0 * s).h(i, i, 2.0));
                    out.push(
                        Residual::new(x[i] * x[i + 1] - 2.0 * x[i + 1])
                            .d(i, x[i + 1])
                            .d(i + 1, x[i] - 2.0)
                            .h(i, i + 1, 1.0),
                    );
                    out.push(Residual::new(x[i + 1] + 1.0).d(i + 1, 1.0));
                }
                out
            },
        }),
        // sum_{i<n} 100 (x_{i+1} - x_i + 1 - x_i^2)^2, n = 10, x0 = 0
        ls("FLETCHCR", vec![0.0; 10], |x| {
            (0..x.len() - 1)
                .map(|i| {
                    Residual::new(10.0 * (x[i + 1] - x[i] + 1.0 - x[i] * x[i]))
                        .d(i, -10.0 * (1.0 + 2.0 * x[i]))
                        .d(i + 1, 10.0)
                        .h(i, i, -20.0)
                })
                .collect()
        }),
        // (x1 - 1)^2 + sum_{i=2..n} 100 (x1 - x_{i-1}^2)^2, n = 20, x0 = -1
        ls("NONDIA", vec![-1.0; 20], |x| {
            let mut out = vec![Residual::new(x[0] - 1.0).d(0, 1.0)];
            out.push(
                Residual::new(10.0 * (x[0] - x[0] * x[0]))
                    .d(0, 10.0 * (1.0 - 2.0 * x[0]))
                    .h(0, 0, -20.0),
            );
            for i in 2..x.len() {
                out.push(
                    Residual::new(10.0 * (x[0] - x[i - 1] * x[i - 1]))
                        .d(0, 10.0)
                        .d(i - 1, -20.0 * x[i - 1])
                        .h(i - 1, i - 1, -20.0),
                );
            }
            out
        }),
        // (sum_i i x_i^2)^2, n = 20, x0 = 1
        ls("POWER", vec![1.0; 20], |x| {
            let mut r = Residual::new((0..x.len()).map(|i| (i + 1) as f64 * x[i] * x[i]).sum());
            for i in 0..x.len() {
                let c = (i + 1) as f64;
                r = r.d(i, 2.0 * c * x[i]).h(i, i, 2.0 * c);
            }
            vec![r]
        }),
        // 1e4 (x2 - sin x1)^2 + x1^2 / 4, x0 = (4.712389, -1)
        ls("SINEVAL", vec![4.712389, -1.0], |x| {
            vec![
                Residual::new(100.0 * (x[1] - x[0].sin()))
                    .d(0, -100.0 * x[0].cos())
                    .d(1, 100.0)
                    .h(0, 0, 100.0 * x[0].sin()),
                Residual::new(0.5 * x[0]).d(0, 0.5),
            ]
        }),
        // (x1^2 + x2^2 + x1 x2)^2 + sin^2 x1 + cos^2 x2, x0 = (3, 0.1)
        ls("S308", vec![3.0, 0.1], |x| {
            vec![
                Residual::new(x[0] * x[0] + x[1] * x[1] + x[0] * x[1])
                    .d(0, 2.0 * x[0] + x[1])
                    .d(1, 2.0 * x[1] + x[0])
                    .h(0, 0, 2.0)
                    .h(0, 1, 1.0)
                    .h(1, 1, 2.0),
                Residual::new(x[0].sin()).d(0, x[0].cos()).h(0, 0, -x[0].sin()),
                Residual::new(x[1].cos()).d(1, -x[1].sin()).h(1, 1, -x[1].cos()),
            ]
        }),
        // sum (x_i - 1)^2 + s^2 + s^4 with s = sum i (x_i - 1), n = 10, x0_i = 1 - i/n
        ls("VARDIM", (1..=10).map(|i| 1.0 - i as f64 / 10.0).collect(), |x| {
            let n = x.len();
            let s: f64 = (0..n).map(|i| (i + 1) as f64 * (x[i] - 1.0)).sum();
            let mut out: Vec<Residual> = (0..n).map(|i| Residual::new(x[i] - 1.0).d(i, 1.0)).collect();
            let mut lin = Residual::new(s);
            let mut sq = Residual::new(s * s);
            for i in 0..n {
                let ci = (i + 1) as f64;
                lin = lin.d(i, ci);
                sq = sq.d(i, 2.0 * s * ci);
                for j in i..n {
                    sq = sq.h(i, j, 2.0 * ci * (j + 1) as f64);
                }
            }
            out.push(lin);
            out.push(sq);
            out
        }),
        // linear function, full rank: m = 2n residuals, n = 10, x0 = 1
        ls("ARGLINA", vec![1.0; 10], |x| {
            let n = x.len();
            let m = 2 * n;
            let c = 2.0 / m as f64;
            let s: f64 = x.iter().sum();
            (0..m)
                .map(|i| {
                    let own = if i < n { x[i] } else { 0.0 };
                    let mut r = Residual::new(own - c * s - 1.0);
                    for j in 0..n {
                        r = r.d(j, if j == i { 1.0 - c } else { -c });
                    }
                    r
                })
                .collect()
        }),
        // Brown and Dennis, m = 20, x0 = (25, 5, -5, -1)
        ls("BROWNDEN", vec![25.0, 5.0, -5.0, -1.0], |x| {
            (1..=20)
                .map(|i| {
                    let t = i as f64 / 5.0;
                    let (st, ct) = t.sin_cos();
                    let a = x[0] + t * x[1] - t.exp();
                    let b = x[2] + x[3] * st - ct;
                    Residual::new(a * a + b * b)
                        .d(0, 2.0 * a)
                        .d(1, 2.0 * a * t)
                        .d(2, 2.0 * b)
                        .d(3, 2.0 * b * st)
                        .h(0, 0, 2.0)
                        .h(0, 1, 2.0 * t)
                        .h(1, 1, 2.0 * t * t)
                        .h(2, 2, 2.0)
                        .h(2, 3, 2.0 * st)
                        .h(3, 3, 2.0 * st * st)
                })
                .collect()
        }),
        // Kowalik and Osborne, x0 = (0.25, 0.39, 0.415, 0.39)
        ls("KOWOSB", vec![0.25, 0.39, 0.415, 0.39], |x| {
            const Y: [f64; 11] = [
                0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
            ];
            const U: [f64; 11] = [4.0, 2.0, 1.0, 0.5, 0.25, 0.167, 0.125, 0.1, 0.0833, 0.0714, 0.0625];
            Y.iter()
                .zip(U)
                .map(|(&y, u)| {
                    let num = u * u + u * x[1];
                    let den = u * u + u * x[2] + x[3];
                    let (d2, d3) = (den * den, den * den * den);
                    Residual::new(y - x[0] * num / den)
                        .d(0, -num / den)
                        .d(1, -x[0] * u / den)
                        .d(2, x[0] * num * u / d2)
                        .d(3, x[0] * num / d2)
                        .h(0, 1, -u / den)
                        .h(0, 2, num * u / d2)
                        .h(0, 3, num / d2)
                        .h(1, 2, x[0] * u * u / d2)
                        .h(1, 3, x[0] * u / d2)
                        .h(2, 2, -2.0 * x[0] * num * u * u / d3)
                        .h(2, 3, -2.0 * x[0] * num * u / d3)
                        .h(3, 3, -2.0 * x[0] * num / d3)
                })
                .collect()
        }),
        // Broyden banded, n = 10, x0 = -1
        ls("BRYBND", vec![-1.0; 10], |x| {
            let n = x.len();
            (0..n)
                .map(|i| {
                    let band = i.saturating_sub(5)..=(i + 1).min(n - 1);
                    let mut value = x[i] * (2.0 + 5.0 * x[i] * x[i]) + 1.0;
                    let mut r = Residual::new(0.0).d(i, 2.0 + 15.0 * x[i] * x[i]).h(i, i, 30.0 * x[i]);
                    for j in band.filter(|&j| j != i) {
                        value -= x[j] * (1.0 + x[j]);
                        r = r.d(j, -(1.0 + 2.0 * x[j])).h(j, j, -2.0);
                    }
                    r.value = value;
                    r
                })
                .collect()
        }),
        // Broyden tridiagonal, n = 10, x0 = -1
        ls("BROYDN3DLS", vec![-1.0; 10], |x| {
            let n = x.len();
            (0..n)
                .map(|i| {
                    let prev = if i > 0 { x[i - 1] } else { 0.0 };
                    let next = if i + 1 < n { x[i + 1] } else { 0.0 };
                    let mut r = Residual::new((3.0 - 2.0 * x[i]) * x[i] - prev - 2.0 * next + 1.0)
                        .d(i, 3.0 - 4.0 * x[i])
                        .h(i, i, -4.0);
                    if i > 0 {
                        r = r.d(i - 1, -1.0);
                    }
                    if i + 1 < n {
                        r = r.d(i + 1, -2.0);
                    }
                    r
                })
                .collect()
        }),
        // discrete boundary value, n = 10, x0_i = t_i (t_i - 1)
        ls(
            "MOREBV",
            (1..=10).map(|i| i as f64 / 11.0 * (i as f64 / 11.0 - 1.0)).collect(),
            |x| {
                let n = x.len();
                let h = 1.0 / (n + 1) as f64;
                (0..n)
                    .map(|i| {
                        let t = (i + 1) as f64 * h;
                        let prev = if i > 0 { x[i - 1] } else { 0.0 };
                        let next = if i + 1 < n { x[i + 1] } else { 0.0 };
                        let c = x[i] + t + 1.0;
                        let mut r = Residual::new(2.0 * x[i] - prev - next + 0.5 * h * h * c * c * c)
                            .d(i, 2.0 + 1.5 * h * h * c * c)
                            .h(i, i, 3.0 * h * h * c);
                        if i > 0 {
                            r = r.d(i - 1, -1.0);
                        }
                        if i + 1 < n {
                            r = r.d(i + 1, -1.0);
                        }
                        r
                    })
                    .collect()
            },
        ),
        // penalty function I, n = 10, x0_j = j
        ls("PENALTY1", (1..=10).map(|j| j as f64).collect(), |x| {
            let a = 1e-5_f64.sqrt();
            let mut out: Vec<Residual> = (0..x.len()).map(|i| Residual::new(a * (x[i] - 1.0)).d(i, a)).collect();
            let mut r = Residual::new(x.iter().map(|v| v * v).sum::<f64>() - 0.25);
            for i in 0..x.len() {
                r = r.d(i, 2.0 * x[i]).h(i, i, 2.0);
            }
            out.push(r);
            out
        }),
        // Biggs EXP6, m = 13, x0 = (1, 2, 1, 1, 1, 1)
        ls("BIGGS6", vec![1.0, 2.0, 1.0, 1.0, 1.0, 1.0], |x| {
            (1..=13)
                .map(|i| {
                    let t = 0.1 * i as f64;
                    let y = (-t).exp() - 5.0 * (-10.0 * t).exp() + 3.0 * (-4.0 * t).exp();
                    let e1 = (-t * x[0]).exp();
                    let e2 = (-t * x[1]).exp();
                    let e3 = (-t * x[4]).exp();
                    Residual::new(x[2] * e1 - x[3] * e2 + x[5] * e3 - y)
                        .d(0, -t * x[2] * e1)
                        .d(1, t * x[3] * e2)
                        .d(2, e1)
                        .d(3, -e2)
                        .d(4, -t * x[5] * e3)
                        .d(5, e3)
                        .h(0, 0, t * t * x[2] * e1)
                        .h(0, 2, -t * e1)
                        .h(1, 1, -t * t * x[3] * e2)
                        .h(1, 3, t * e2)
                        .h(4, 4, t * t * x[5] * e3)
                        .h(4, 5, -t * e3)
                })
                .collect()
        }),
        // Gaussian, x0 = (0.4, 1, 0)
        ls("GAUSSIAN", vec![0.4, 1.0, 0.0], |x| {
            const Y: [f64; 15] = [
                0.0009, 0.0044, 0.0175, 0.0540, 0.1295, 0.2420, 0.3521, 0.3989, 0.3521, 0.2420, 0.1295, 0.0540, 0.0175,
                0.0044, 0.0009,
            ];
            Y.iter()
                .enumerate()
                .map(|(k, &y)| {
                    let t = (7.0 - k as f64) / 2.0;
                    let s = t - x[2];
                    let e = (-0.5 * x[1] * s * s).exp();
                    Residual::new(x[0] * e - y)
                        .d(0, e)
                        .d(1, -0.5 * x[0] * s * s * e)
                        .d(2, x[0] * x[1] * s * e)
                        .h(0, 1, -0.5 * s * s * e)
                        .h(0, 2, x[1] * s * e)
                        .h(1, 1, 0.25 * x[0] * s.powi(4) * e)
                        .h(1, 2, x[0] * s * e - 0.5 * x[0] * x[1] * s.powi(3) * e)
                        .h(2, 2, x[0] * x[1] * e * (x[1] * s * s - 1.0))
                })
                .collect()
        }),
        // trigonometric, n = 10, x0 = 1/n
        ls("ARGTRIGLS", vec![0.1; 10], |x| {
            let n = x.len();
            let cos_sum: f64 = x.iter().map(|v| v.cos()).sum();
            (0..n)
                .map(|i| {
                    let ci = (i + 1) as f64;
                    let (si, co) = x[i].sin_cos();
                    let mut r = Residual::new(n as f64 - cos_sum + ci * (1.0 - co) - si);
                    for j in 0..n {
                        let (sj, cj) = x[j].sin_cos();
                        if j == i {
                            r = r.d(j, sj + ci * sj - cj).h(j, j, cj + ci * cj + sj);
                        } else {
                            r = r.d(j, sj).h(j, j, cj);
                        }
                    }
                    r
                })
                .collect()
        }),
        // Brown badly scaled, x0 = (1, 1)
        ls("BROWNBS", vec![1.0, 1.0], |x| {
            vec![
                Residual::new(x[0] - 1e6).d(0, 1.0),
                Residual::new(x[1] - 2e-6).d(1, 1.0),
                Residual::new(x[0] * x[1] - 2.0).d(0, x[1]).d(1, x[0]).h(0, 1, 1.0),
            ]
        }),
        // sum_{i<n} cos(x_i^2 - x_{i+1} / 2), n = 10, x0 = 1
        explicit(
            "COSINE",
            vec![1.0; 10],
            |x| (0..x.len() - 1).map(|i| (x[i] * x[i] - 0.5 * x[i + 1]).cos()).sum(),
            |x| {
                let mut g = vec![0.0; x.len()];
                for i in 0..x.len() - 1 {
                    let s = (x[i] * x[i] - 0.5 * x[i + 1]).sin();
                    g[i] -= 2.0 * x[i] * s;
                    g[i + 1] += 0.5 * s;
                }
                g
            },
            |x| {
                let n = x.len();
                let mut h = Matrix::zeros(n, n);
                for i in 0..n - 1 {
                    let (s, c) = (x[i] * x[i] - 0.5 * x[i + 1]).sin_cos();
                    h[(i, i)] += -4.0 * x[i] * x[i] * c - 2.0 * s;
                    h[(i, i + 1)] += x[i] * c;
                    h[(i + 1, i)] += x[i] * c;
                    h[(i + 1, i + 1)] += -0.25 * c;
                }
                h
            },
        ),
        // (x1^2 + x2^2)^2 - 4 x1 + 3, x0 = (2, 2)
        explicit(
            "ENGVAL1",
            vec![2.0, 2.0],
            |x| {
                let q = x[0] * x[0] + x[1] * x[1];
                q * q - 4.0 * x[0] + 3.0
            },
            |x| {
                let q = x[0] * x[0] + x[1] * x[1];
                vec![4.0 * q * x[0] - 4.0, 4.0 * q * x[1]]
            },
            |x| {
                let q = x[0] * x[0] + x[1] * x[1];
                sym2(
                    4.0 * q + 8.0 * x[0] * x[0],
                    8.0 * x[0] * x[1],
                    4.0 * q + 8.0 * x[1] * x[1],
                )
            },
        ),
        // Watson, n = 12, 31 residuals, x0 = 0
        ls("WATSON", vec![0.0; 12], |x| {
            let n = x.len();
            let mut out = Vec::with_capacity(31);
            for i in 1..=29 {
                let t = i as f64 / 29.0;
                let pw: Vec<f64> = (0..2 * n).map(|k| t.powi(k as i32)).collect();
                let s: f64 = (0..n).map(|k| x[k] * pw[k]).sum();
                let lin: f64 = (1..n).map(|k| k as f64 * x[k] * pw[k - 1]).sum();
                let mut r = Residual::new(lin - s * s - 1.0).d(0, -2.0 * s);
                for k in 1..n {
                    r = r.d(k, k as f64 * pw[k - 1] - 2.0 * s * pw[k]);
                }
                for k in 0..n {
                    for l in k..n {
                        r = r.h(k, l, -2.0 * pw[k + l]);
                    }
                }
                out.push(r);
            }
            out.push(Residual::new(x[0]).d(0, 1.0));
            out.push(
                Residual::new(x[1] - x[0] * x[0] - 1.0)
                    .d(1, 1.0)
                    .d(0, -2.0 * x[0])
                    .h(0, 0, -2.0),
            );
            out
        }),
    ]
}

fn dqdrtic_coefficients(n: usize) -> Vec<f64> {
    let mut c = vec![0.0; n];
    for i in 0..n.saturating_sub(2) {
        c[i] += 1.0;
        c[i + 1] += 100.0;
        c[i + 2] += 100.0;
    }
    c
}
