//! Flat `key = value` configuration files.
//!
//! ```text
//! # trust region
//! tr.delta0 = 1
//! tr.max_iters = 10000
//! ppg.N = 50
//! h.kind = l1
//! h.weight = 1
//! ```

use std::fmt;

use proxtr::{PpgConfig, Regularizer, TrConfig, Vector};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ConfigError {
            line: Some(line),
            message: message.into(),
        }
    }

    pub fn new(message: impl Into<String>) -> Self {
        ConfigError {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegKind {
    L1,
    Zero,
    SquaredL2,
    Ball,
}

/// Regularizer settings, resolved against a problem dimension later.
#[derive(Debug, Clone, PartialEq)]
pub struct RegSpec {
    pub kind: RegKind,
    pub weight: f64,
    pub radius: f64,
    /// A single value is broadcast to every coordinate.
    pub center: Vec<f64>,
}

impl Default for RegSpec {
    fn default() -> Self {
        RegSpec {
            kind: RegKind::L1,
            weight: 1.0,
            radius: 1.0,
            center: vec![0.0],
        }
    }
}

impl RegSpec {
    pub fn build(&self, dim: usize) -> Result<Regularizer, ConfigError> {
        let err = |e: proxtr::Error| ConfigError::new(format!("h: {e}"));
        match self.kind {
            RegKind::L1 => Regularizer::l1(self.weight, dim).map_err(err),
            RegKind::Zero => Ok(Regularizer::zero(dim)),
            RegKind::SquaredL2 => Regularizer::squared_l2(self.weight, dim).map_err(err),
            RegKind::Ball => {
                let center = match self.center.len() {
                    1 => Vector::from_element(dim, self.center[0]),
                    n if n == dim => Vector::from_column_slice(&self.center),
                    n => {
                        return Err(ConfigError::new(format!(
                            "h.center has {n} entries but the problem has dimension {dim}"
                        )))
                    }
                };
                Regularizer::ball(center, self.radius).map_err(err)
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Settings {
    pub tr: TrConfig,
    pub ppg: PpgConfig,
    pub reg: RegSpec,
}

impl Settings {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.tr.validate().map_err(|e| ConfigError::new(e.to_string()))?;
        self.ppg.validate().map_err(|e| ConfigError::new(e.to_string()))
    }
}

pub fn parse(text: &str) -> Result<Settings, ConfigError> {
    let mut s = Settings::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError::at(line_no, format!("expected `key = value`, got `{line}`")))?;
        set(&mut s, key.trim(), value.trim()).map_err(|m| ConfigError::at(line_no, m))?;
    }
    s.validate()?;
    Ok(s)
}

fn real(key: &str, v: &str) -> Result<f64, String> {
    let x: f64 = v.parse().map_err(|_| format!("{key}: `{v}` is not a number"))?;
    if x.is_nan() {
        return Err(format!("{key}: NaN is not allowed"));
    }
    Ok(x)
}

fn count(key: &str, v: &str) -> Result<usize, String> {
    v.parse()
        .map_err(|_| format!("{key}: `{v}` is not a non-negative integer"))
}

fn flag(key: &str, v: &str) -> Result<bool, String> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(format!("{key}: `{v}` is not a boolean")),
    }
}

fn set(s: &mut Settings, key: &str, v: &str) -> Result<(), String> {
    match key {
        "tr.delta0" => s.tr.delta0 = real(key, v)?,
        "tr.eta_accept" => s.tr.eta_accept = real(key, v)?,
        "tr.expand_threshold" => s.tr.expand_threshold = real(key, v)?,
        "tr.shrink_threshold" => s.tr.shrink_threshold = real(key, v)?,
        "tr.expand_factor" => s.tr.expand_factor = real(key, v)?,
        "tr.shrink_factor" => s.tr.shrink_factor = real(key, v)?,
        "tr.delta_cap" => s.tr.delta_cap = real(key, v)?,
        "tr.boundary_fraction" => s.tr.boundary_fraction = real(key, v)?,
        "tr.tol_pi" => s.tr.tol_pi = real(key, v)?,
        "tr.max_iters" => s.tr.max_iters = count(key, v)?,
        "ppg.N" | "ppg.n" => s.ppg.n = count(key, v)?,
        "ppg.mu_u" => s.ppg.mu_u = real(key, v)?,
        "ppg.alpha" => s.ppg.alpha = real(key, v)?,
        "ppg.max_backtracks" => s.ppg.max_backtracks = count(key, v)?,
        "ppg.gamma0" => s.ppg.gamma0_override = Some(real(key, v)?),
        "ppg.gamma_refresh" => s.ppg.gamma_refresh = flag(key, v)?,
        "h.kind" => {
            s.reg.kind = match v {
                "l1" => RegKind::L1,
                "zero" | "none" => RegKind::Zero,
                "squared_l2" | "l2sq" => RegKind::SquaredL2,
                "ball" => RegKind::Ball,
                other => return Err(format!("h.kind: unknown regularizer `{other}`")),
            }
        }
        "h.weight" => s.reg.weight = real(key, v)?,
        "h.radius" => s.reg.radius = real(key, v)?,
        "h.center" => {
            s.reg.center = v
                .split(',')
                .map(|c| real(key, c.trim()))
                .collect::<Result<Vec<_>, _>>()?
        }
        other => return Err(format!("unknown key `{other}`")),
    }
    Ok(())
}
