//! The symmetric quartic double well
//!
//! `V(x) = m ω² / (8 a²) · (x − a)² (x + a)²`
//!
//! with minima at `±a` and barrier height `m ω² a² / 8` at the origin. Every
//! dimensionless result depends on the parameters only through
//! `η = sqrt(ħ / (m ω a²))`.

use crate::error::{Error, Result};

/// Physical inputs of the double well. Validated on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellParameters {
    mass: f64,
    angular_frequency: f64,
    half_separation: f64,
    hbar: f64,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

impl WellParameters {
    pub fn new(mass: f64, angular_frequency: f64, half_separation: f64, hbar: f64) -> Result<Self> {
        let p = WellParameters {
            mass: positive("m", mass)?,
            angular_frequency: positive("omega", angular_frequency)?,
            half_separation: positive("a", half_separation)?,
            hbar: positive("hbar", hbar)?,
        };
        positive("eta", p.eta())?;
        Ok(p)
    }

    /// Natural units `m = ω = ħ = 1`, in which `a = 1/η`.
    pub fn from_eta(eta: f64) -> Result<Self> {
        let eta = positive("eta", eta)?;
        Self::new(1.0, 1.0, 1.0 / eta, 1.0)
    }

    /// Physical `m`, `ω`, `ħ` with the half-separation chosen to give `η`.
    pub fn with_eta(mass: f64, angular_frequency: f64, hbar: f64, eta: f64) -> Result<Self> {
        let eta = positive("eta", eta)?;
        let length = positive("hbar", hbar)? / (positive("m", mass)? * positive("omega", angular_frequency)?);
        Self::new(mass, angular_frequency, length.sqrt() / eta, hbar)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn angular_frequency(&self) -> f64 {
        self.angular_frequency
    }

    pub fn half_separation(&self) -> f64 {
        self.half_separation
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `η = sqrt(ħ / (m ω a²))`.
    pub fn eta(&self) -> f64 {
        (self.hbar / (self.mass * self.angular_frequency)).sqrt() / self.half_separation
    }

    /// Energy quantum `ħω`.
    pub fn hbar_omega(&self) -> f64 {
        self.hbar * self.angular_frequency
    }

    /// Harmonic oscillator length `sqrt(ħ / (m ω))`.
    pub fn oscillator_length(&self) -> f64 {
        (self.hbar / (self.mass * self.angular_frequency)).sqrt()
    }

    pub fn shape(&self) -> PotentialShape {
        PotentialShape {
            barrier_height: self.mass * self.angular_frequency.powi(2) * self.half_separation.powi(2) / 8.0,
            minimum: self.half_separation,
        }
    }

    /// The potential energy at `x`.
    pub fn potential(&self, x: f64) -> f64 {
        potential(self, x)
    }
}

/// Barrier height `V₀ = m ω² a² / 8` and the minimum position `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialShape {
    pub barrier_height: f64,
    pub minimum: f64,
}

pub fn potential(p: &WellParameters, x: f64) -> f64 {
    let a = p.half_separation;
    let k = p.mass * p.angular_frequency * p.angular_frequency / (8.0 * a * a);
    let d = (x - a) * (x + a);
    k * d * d
}

pub fn eta(p: &WellParameters) -> f64 {
    p.eta()
}

pub fn from_eta(eta: f64) -> Result<WellParameters> {
    WellParameters::from_eta(eta)
}
