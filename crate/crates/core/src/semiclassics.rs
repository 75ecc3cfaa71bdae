//! Turning points, the barrier action and well period, and the three
//! splitting formulas.
//!
//! All splittings are carried as natural logarithms of `ΔE/ħω`; at `η = 0.1`
//! the splitting is already `~1e-28 ħω` and it falls like `e^{-2/(3η²)}`.

use std::f64::consts::{E, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::model::WellParameters;
use crate::perturbation::{self, CoefficientMode, PerturbedLevel};
use crate::quadrature::{Estimate, TanhSinh};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// `sqrt(e/π)`, the asymptotic-WKB to instanton ratio without anharmonicity.
pub fn uncorrected_ratio() -> f64 {
    (E / PI).sqrt()
}

/// Classical turning points `±α` (barrier side) and `±γ` (outer wall).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints {
    pub alpha: f64,
    pub gamma: f64,
}

/// A tunneling splitting stored as `ln(ΔE/ħω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Splitting {
    pub ln_reduced: f64,
    pub hbar_omega: f64,
    /// Estimated relative error; zero for closed-form expressions.
    pub relative_error: f64,
}

impl Splitting {
    fn closed_form(ln_reduced: f64, p: &WellParameters) -> Self {
        Splitting {
            ln_reduced,
            hbar_omega: p.hbar_omega(),
            relative_error: 0.0,
        }
    }

    pub fn energy(&self) -> f64 {
        self.hbar_omega * self.ln_reduced.exp()
    }

    pub fn ln_energy(&self) -> f64 {
        self.ln_reduced + self.hbar_omega.ln()
    }

    /// `ΔE / ħω`
    pub fn reduced(&self) -> f64 {
        self.ln_reduced.exp()
    }

    pub fn ratio_to(&self, other: &Splitting) -> f64 {
        (self.ln_energy() - other.ln_energy()).exp()
    }
}

/// Paper-mode validity boundary, computed once.
pub fn validity_boundary() -> f64 {
    static BOUNDARY: OnceLock<f64> = OnceLock::new();
    *BOUNDARY.get_or_init(perturbation::validity_boundary)
}

/// Rejects `η` outside `(0, η*)`, and `1 + ε ≤ 0`.
pub fn check_validity(eta: f64) -> Result<f64> {
    let eps = perturbation::epsilon_closed_form(eta)?;
    let boundary = validity_boundary();
    if eta >= boundary {
        return Err(Error::OutsideValidity { eta, boundary });
    }
    if 1.0 + eps <= 0.0 {
        return Err(Error::NonPositiveLevel { value: 1.0 + eps });
    }
    Ok(eps)
}

fn check_tolerance(tol: f64) -> Result<()> {
    if (1e-13..=1e-6).contains(&tol) {
        Ok(())
    } else {
        Err(Error::Tolerance(tol))
    }
}

/// `α = a sqrt(1 − 2η sqrt(1+ε))`, `γ = a sqrt(1 + 2η sqrt(1+ε))`.
pub fn turning_points(p: &WellParameters, level: &PerturbedLevel) -> Result<TurningPoints> {
    if !level.below_barrier {
        return Err(Error::AboveBarrier { eta: p.eta() });
    }
    let a = p.half_separation();
    let spread = 2.0 * p.eta() * (1.0 + level.epsilon).sqrt();
    Ok(TurningPoints {
        alpha: a * (1.0 - spread).sqrt(),
        gamma: a * (1.0 + spread).sqrt(),
    })
}

/// Turning points in units of `a`.
fn reduced(p: &WellParameters, tp: &TurningPoints) -> (f64, f64) {
    let a = p.half_separation();
    (tp.alpha / a, tp.gamma / a)
}

/// Barrier action `S = (1/ħ) ∫_{−α}^{α} sqrt(2m(V − E)) dx`.
///
/// With `x = aξ` and `V − E = mω²a²/8 · (α̂² − ξ²)(γ̂² − ξ²)`, this becomes
/// `S = η⁻² ∫_0^{α̂} sqrt((α̂² − ξ²)(γ̂² − ξ²)) dξ`.
pub fn action_s(p: &WellParameters, level: &PerturbedLevel, tp: &TurningPoints, tol: f64) -> Result<Estimate> {
    if !level.below_barrier {
        return Err(Error::AboveBarrier { eta: p.eta() });
    }
    check_tolerance(tol)?;
    let (alpha, gamma) = reduced(p, tp);
    let integral = TanhSinh::new(tol).integrate(0.0, alpha, |x, _, to_alpha| {
        (to_alpha * (alpha + x) * (gamma * gamma - x * x)).sqrt()
    })?;
    let scale = 1.0 / (p.eta() * p.eta());
    Ok(Estimate {
        value: scale * integral.value,
        error: scale * integral.error,
        evaluations: integral.evaluations,
    })
}

/// Classical period `T = ∫_α^γ sqrt(2m) / sqrt(E − V) dx`.
///
/// The integrand is `4/ω · [(ξ − α̂)(ξ + α̂)(γ̂ − ξ)(γ̂ + ξ)]^{-1/2}` in `ξ = x/a`,
/// singular at both ends. The integral is the full period of oscillation in
/// one well, so `ωT → 2π` in the harmonic limit.
pub fn period_t(p: &WellParameters, level: &PerturbedLevel, tp: &TurningPoints, tol: f64) -> Result<Estimate> {
    if !level.below_barrier {
        return Err(Error::AboveBarrier { eta: p.eta() });
    }
    check_tolerance(tol)?;
    let (alpha, gamma) = reduced(p, tp);
    let integral = TanhSinh::new(tol).integrate(alpha, gamma, |x, from_alpha, to_gamma| {
        4.0 / (from_alpha * (x + alpha) * to_gamma * (gamma + x)).sqrt()
    })?;
    let scale = 1.0 / p.angular_frequency();
    Ok(Estimate {
        value: scale * integral.value,
        error: scale * integral.error,
        evaluations: integral.evaluations,
    })
}

/// Quadrature pieces of the exact-integral WKB splitting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WkbIntegrals {
    pub turning_points: TurningPoints,
    pub action: Estimate,
    pub period: Estimate,
    pub splitting: Splitting,
}

pub fn wkb_integrals(p: &WellParameters, level: &PerturbedLevel, tol: f64) -> Result<WkbIntegrals> {
    let tp = turning_points(p, level)?;
    let action = action_s(p, level, &tp, tol)?;
    let period = period_t(p, level, &tp, tol)?;
    // ΔE/ħω = 2/(ωT) e^{−S}
    let omega_t = p.angular_frequency() * period.value;
    let splitting = Splitting {
        ln_reduced: 2f64.ln() - omega_t.ln() - action.value,
        hbar_omega: p.hbar_omega(),
        relative_error: action.error + period.relative_error(),
    };
    Ok(WkbIntegrals {
        turning_points: tp,
        action,
        period,
        splitting,
    })
}

/// `ΔE = (2ħ/T) e^{−S}` with `S` and `T` by quadrature.
pub fn splitting_wkb_exact(p: &WellParameters, level: &PerturbedLevel, tol: f64) -> Result<Splitting> {
    wkb_integrals(p, level, tol).map(|w| w.splitting)
}

/// `ln δ(η)`, with `δ = (1+ε)^{−1/2} exp[ε/2 − ε ln(η sqrt(1+ε)/4)]`.
pub fn ln_delta_factor(eta: f64) -> Result<f64> {
    let eps = perturbation::epsilon_closed_form(eta)?;
    let shift = 1.0 + eps;
    if shift <= 0.0 {
        return Err(Error::NonPositiveLevel { value: shift });
    }
    Ok(-0.5 * shift.ln() + 0.5 * eps - eps * (eta * shift.sqrt() / 4.0).ln())
}

pub fn delta_factor(eta: f64) -> Result<f64> {
    ln_delta_factor(eta).map(f64::exp)
}

/// `ln(ΔE_in/ħω) = ln(4/sqrt(π)) − ln η − 2/(3η²)`
fn ln_instanton(eta: f64) -> f64 {
    4f64.ln() - 0.5 * PI.ln() - eta.ln() - 2.0 / (3.0 * eta * eta)
}

/// `ΔE ≈ ħω · 4 sqrt(e)/(πη) · e^{−2/(3η²)} · δ(η)`.
pub fn splitting_asymptotic(p: &WellParameters) -> Result<Splitting> {
    let eta = p.eta();
    check_validity(eta)?;
    let ln = 4f64.ln() + 0.5 - PI.ln() - eta.ln() - 2.0 / (3.0 * eta * eta) + ln_delta_factor(eta)?;
    Ok(Splitting::closed_form(ln, p))
}

/// The asymptotic splitting without anharmonicity (`δ ≡ 1`).
pub fn splitting_asymptotic_uncorrected(p: &WellParameters) -> Splitting {
    let eta = p.eta();
    Splitting::closed_form(4f64.ln() + 0.5 - PI.ln() - eta.ln() - 2.0 / (3.0 * eta * eta), p)
}

/// `ΔE_in = 4ħω/(sqrt(π) η) · e^{−2/(3η²)}`.
pub fn splitting_instanton(p: &WellParameters) -> Splitting {
    Splitting::closed_form(ln_instanton(p.eta()), p)
}

/// `ΔE_WKB/ΔE_in = sqrt(e/π) δ(η)`.
pub fn ratio_wkb_instanton(eta: f64) -> Result<f64> {
    check_validity(eta)?;
    Ok((0.5 * (1.0 - PI.ln()) + ln_delta_factor(eta)?).exp())
}

/// Locates the `η` in `[lo, hi]` where the corrected ratio equals one.
pub fn crossing_point(lo: f64, hi: f64) -> Result<f64> {
    let f = |eta: f64| ratio_wkb_instanton(eta).map(|r| r - 1.0);
    let (mut lo, mut hi) = (lo, hi);
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Sweep(format!("no sign change of ratio − 1 on [{lo}, {hi}]")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)?.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Every semiclassical quantity at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplittingReport {
    pub eta: f64,
    pub epsilon: f64,
    pub turning_points: TurningPoints,
    pub action: Estimate,
    pub period: Estimate,
    pub omega_period: f64,
    pub wkb: Splitting,
    pub asymptotic: Splitting,
    pub instanton: Splitting,
    pub delta: f64,
    pub ratio_wkb_instanton: f64,
    pub ratio_uncorrected: f64,
}

impl SplittingReport {
    pub fn compute(p: &WellParameters, tol: f64) -> Result<Self> {
        let eta = p.eta();
        let epsilon = check_validity(eta)?;
        let level = perturbation::perturbed_level(p, CoefficientMode::Paper);
        let integrals = wkb_integrals(p, &level, tol)?;
        let asymptotic = splitting_asymptotic(p)?;
        let instanton = splitting_instanton(p);
        Ok(SplittingReport {
            eta,
            epsilon,
            turning_points: integrals.turning_points,
            action: integrals.action,
            period: integrals.period,
            omega_period: p.angular_frequency() * integrals.period.value,
            wkb: integrals.splitting,
            asymptotic,
            instanton,
            delta: delta_factor(eta)?,
            ratio_wkb_instanton: ratio_wkb_instanton(eta)?,
            ratio_uncorrected: uncorrected_ratio(),
        })
    }
}
