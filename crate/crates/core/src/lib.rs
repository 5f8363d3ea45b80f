//! Nonsmooth trust-region method for composite problems `min f(x) + h(x)`.
//!
//! `f` is smooth and possibly nonconvex, `h` is convex with an inexpensive
//! proximity operator. Trust-region subproblems are solved approximately by
//! a projected proximal gradient (PPG) method with geometric stepsize
//! backtracking. The crate also carries the benchmark machinery (first-hit
//! tables, data and performance profiles, CSV/SVG output) and numerical
//! probes of the decrease inequalities behind the method's analysis.

pub mod bench;
pub mod error;
pub mod linalg;
pub mod model;
pub mod output;
pub mod ppg;
pub mod problems;
pub mod profiles;
pub mod regularizers;
pub mod theory;
pub mod trust_region;

pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
pub use model::{stationarity_measure, TrustRegionModel};
pub use ppg::{
    initial_gamma_heuristic, ppg_inner, ppg_with_backtracking, theta_constant, PpgConfig, PpgOutcome, PpgTermination,
};
pub use problems::{builtin_suite, find_problem, random_quadratic, CompositeProblem, SmoothOracle};
pub use profiles::{data_profile, performance_profile, CurveKind, FirstHit, ProfileCurve, ProfileTable};
pub use regularizers::{Regularizer, RegularizerKind};
pub use trust_region::{solve, IterationRecord, SolveResult, SolveStatus, TrConfig};
