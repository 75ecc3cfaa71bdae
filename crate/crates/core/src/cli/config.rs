//! Optional TOML configuration. Command-line flags override file values,
//! which override the built-in defaults.
//!
//! ```toml
//! tol = 1e-10
//!
//! [units]
//! m = 1.0
//! omega = 1.0
//! hbar = 1.0
//!
//! [sweep]
//! eta_min = 0.02
//! eta_max = 0.15
//! steps = 100
//! spacing = "linear"
//! ```

use std::path::Path;

use serde::Deserialize;

use super::Spacing;
use crate::error::{Error, Result};
use crate::semiclassics::DEFAULT_TOLERANCE;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub tol: Option<f64>,
    #[serde(default)]
    pub units: Units,
    #[serde(default)]
    pub sweep: SweepDefaults,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Units {
    pub m: Option<f64>,
    pub omega: Option<f64>,
    pub hbar: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepDefaults {
    pub eta_min: Option<f64>,
    pub eta_max: Option<f64>,
    pub steps: Option<usize>,
    pub spacing: Option<Spacing>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn tolerance(&self, flag: Option<f64>) -> f64 {
        flag.or(self.tol).unwrap_or(DEFAULT_TOLERANCE)
    }
}

/// First of flag, file value, default.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_layers() {
        let c = Config::parse("tol = 1e-8\n[units]\nm = 2.0\n[sweep]\nsteps = 7\nspacing = \"log\"\n").unwrap();
        assert_eq!(c.tolerance(None), 1e-8);
        assert_eq!(c.tolerance(Some(1e-12)), 1e-12);
        assert_eq!(Config::default().tolerance(None), DEFAULT_TOLERANCE);
        assert_eq!(pick(None, c.units.m, 1.0), 2.0);
        assert_eq!(pick(Some(3.0), c.units.m, 1.0), 3.0);
        assert_eq!(pick(None, c.units.omega, 1.0), 1.0);
        assert_eq!(c.sweep.spacing, Some(Spacing::Log));
        assert_eq!(c.sweep.steps, Some(7));
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(matches!(Config::parse("tolerance = 1.0"), Err(Error::Config(_))));
    }
}
