//! Anharmonic shift of the ground level in one well.
//!
//! Expanding the potential about the minimum at `x = a` gives a harmonic
//! oscillator plus cubic and quartic perturbations,
//!
//! `V = c₂ y² + c₃ y³ + c₄ y⁴`, `y = x − a`,
//!
//! and second-order Rayleigh–Schrödinger theory over oscillator number states
//! shifts the ground energy to `E = ½ħω (1 + ε)`. The closed form used
//! throughout the splitting formulas is `ε(η) = η²/16 · (25 − 189 η²)`;
//! [`rs_engine`] re-derives it from ladder-operator matrix elements.

use crate::error::{Error, Result};
use crate::model::WellParameters;

/// Which cubic and quartic coefficients to expand with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoefficientMode {
    /// `c₃ = c₂/a`, `c₄ = 3 c₂/a²`. These are the coefficients behind the
    /// closed-form `ε(η)` and are the default everywhere.
    #[default]
    Paper,
    /// Direct Taylor expansion of the quartic well: `c₃ = c₂/a`, `c₄ = c₂/(4a²)`.
    Taylor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    First,
    Second,
}

/// Local polynomial expansion of the potential about `x = a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnharmonicExpansion {
    pub params: WellParameters,
    pub harmonic: f64,
    pub cubic: f64,
    pub quartic: f64,
    pub expansion_point: f64,
}

impl AnharmonicExpansion {
    pub fn new(params: WellParameters, mode: CoefficientMode) -> Self {
        let a = params.half_separation();
        let c2 = 0.5 * params.mass() * params.angular_frequency().powi(2);
        let quartic = match mode {
            CoefficientMode::Paper => c2 * 3.0 / (a * a),
            CoefficientMode::Taylor => c2 / (4.0 * a * a),
        };
        AnharmonicExpansion {
            params,
            harmonic: c2,
            cubic: c2 / a,
            quartic,
            expansion_point: a,
        }
    }

    /// Arbitrary cubic and quartic coefficients on the oscillator of `params`.
    pub fn with_coefficients(params: WellParameters, cubic: f64, quartic: f64) -> Self {
        AnharmonicExpansion {
            cubic,
            quartic,
            ..Self::new(params, CoefficientMode::Paper)
        }
    }
}

/// Ground level of one well, shifted by anharmonicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbedLevel {
    pub eta: f64,
    /// `E₀ = ½ħω`
    pub unperturbed: f64,
    pub epsilon: f64,
    /// `E = E₀ (1 + ε)`
    pub energy: f64,
    /// `0 < E < V₀`, i.e. `1 + ε > 0` and `η² (1 + ε) < 1/4`.
    pub below_barrier: bool,
    pub mode: CoefficientMode,
}

impl PerturbedLevel {
    fn new(p: &WellParameters, epsilon: f64, mode: CoefficientMode) -> Self {
        let eta = p.eta();
        let unperturbed = 0.5 * p.hbar_omega();
        PerturbedLevel {
            eta,
            unperturbed,
            epsilon,
            energy: unperturbed * (1.0 + epsilon),
            below_barrier: level_is_bound(eta, epsilon),
            mode,
        }
    }
}

fn level_is_bound(eta: f64, epsilon: f64) -> bool {
    let shift = 1.0 + epsilon;
    shift > 0.0 && eta * eta * shift < 0.25
}

/// `ε(η) = η²/16 · (25 − 189 η²)`.
pub fn epsilon_closed_form(eta: f64) -> Result<f64> {
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::InvalidParameter {
            name: "eta",
            value: eta,
        });
    }
    let e2 = eta * eta;
    Ok(e2 / 16.0 * (25.0 - 189.0 * e2))
}

/// `ε(η)` in the chosen coefficient mode.
pub fn epsilon(eta: f64, mode: CoefficientMode) -> Result<f64> {
    match mode {
        CoefficientMode::Paper => epsilon_closed_form(eta),
        CoefficientMode::Taylor => {
            let p = WellParameters::from_eta(eta)?;
            rs_engine(&AnharmonicExpansion::new(p, mode), Order::Second, 5)
        }
    }
}

pub fn perturbed_level(p: &WellParameters, mode: CoefficientMode) -> PerturbedLevel {
    let eps = match mode {
        CoefficientMode::Paper => {
            let e2 = p.eta() * p.eta();
            e2 / 16.0 * (25.0 - 189.0 * e2)
        }
        CoefficientMode::Taylor => {
            let exp = AnharmonicExpansion::new(*p, mode);
            rs_terms(&exp, Order::Second, 5).epsilon()
        }
    };
    PerturbedLevel::new(p, eps, mode)
}

/// Per-state second-order contribution `|⟨k|H′|0⟩|² / (E₀ − E_k)`, split by
/// which part of the perturbation produced the amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateContribution {
    pub state: usize,
    /// `c₃ ⟨k|y³|0⟩`
    pub cubic_amplitude: f64,
    /// `c₄ ⟨k|y⁴|0⟩`
    pub quartic_amplitude: f64,
    pub energy: f64,
}

impl StateContribution {
    /// The cubic–quartic interference part of `energy`.
    pub fn cross_term(&self, denominator: f64) -> f64 {
        2.0 * self.cubic_amplitude * self.quartic_amplitude / denominator
    }
}

/// Itemized perturbation sum.
#[derive(Debug, Clone, PartialEq)]
pub struct RsBreakdown {
    pub unperturbed: f64,
    pub first_order: f64,
    pub contributions: Vec<StateContribution>,
}

impl RsBreakdown {
    pub fn second_order(&self) -> f64 {
        self.contributions.iter().map(|c| c.energy).sum()
    }

    pub fn epsilon(&self) -> f64 {
        (self.first_order + self.second_order()) / self.unperturbed
    }
}

/// `(b + b†) v` in a basis truncated to `v.len()` states.
fn apply_position(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    (0..n)
        .map(|k| {
            let up = if k + 1 < n {
                ((k + 1) as f64).sqrt() * v[k + 1]
            } else {
                0.0
            };
            let down = if k > 0 { (k as f64).sqrt() * v[k - 1] } else { 0.0 };
            up + down
        })
        .collect()
}

fn rs_terms(exp: &AnharmonicExpansion, order: Order, truncation: usize) -> RsBreakdown {
    let p = &exp.params;
    let hw = p.hbar_omega();
    // y = ℓ/√2 (b + b†)
    let scale = p.oscillator_length() / std::f64::consts::SQRT_2;

    let mut ground = vec![0.0; truncation];
    ground[0] = 1.0;
    let y1 = apply_position(&ground);
    let y2 = apply_position(&y1);
    let y3 = apply_position(&y2);
    let y4 = apply_position(&y3);
    let cubic: Vec<f64> = y3.iter().map(|v| exp.cubic * scale.powi(3) * v).collect();
    let quartic: Vec<f64> = y4.iter().map(|v| exp.quartic * scale.powi(4) * v).collect();

    let contributions = match order {
        Order::First => Vec::new(),
        Order::Second => (1..truncation)
            .map(|k| {
                let amp = cubic[k] + quartic[k];
                StateContribution {
                    state: k,
                    cubic_amplitude: cubic[k],
                    quartic_amplitude: quartic[k],
                    energy: -amp * amp / (k as f64 * hw),
                }
            })
            .collect(),
    };
    RsBreakdown {
        unperturbed: 0.5 * hw,
        first_order: cubic[0] + quartic[0],
        contributions,
    }
}

/// Itemized Rayleigh–Schrödinger sum for the ground state of `exp`.
pub fn rs_breakdown(exp: &AnharmonicExpansion, order: Order, truncation: usize) -> Result<RsBreakdown> {
    if truncation < 5 {
        return Err(Error::Truncation(truncation));
    }
    Ok(rs_terms(exp, order, truncation))
}

/// Relative ground-level shift `ε` from Rayleigh–Schrödinger theory with exact
/// ladder-operator matrix elements. Exactly independent of `truncation ≥ 5`:
/// `y³` and `y⁴` only connect `|0⟩` to `|k⟩` with `k ≤ 4`.
pub fn rs_engine(exp: &AnharmonicExpansion, order: Order, truncation: usize) -> Result<f64> {
    rs_breakdown(exp, order, truncation).map(|b| b.epsilon())
}

/// Coefficients `(A, B)` of `ε(η) = A η² + B η⁴` as produced by the engine.
pub fn epsilon_series_coefficients(mode: CoefficientMode) -> (f64, f64) {
    series_coefficients_with(|p| AnharmonicExpansion::new(*p, mode))
}

/// Extracts `(A, B)` from two engine runs. The second-order output is an
/// exact polynomial of degree two in `η²`, so two well-separated evaluation
/// points determine it without truncation error.
pub fn series_coefficients_with<F>(expansion: F) -> (f64, f64)
where
    F: Fn(&WellParameters) -> AnharmonicExpansion,
{
    let ratio = |eta: f64| {
        let p = WellParameters::from_eta(eta).expect("positive eta");
        rs_terms(&expansion(&p), Order::Second, 5).epsilon() / (eta * eta)
    };
    let (lo, hi) = (0.5, 1.0);
    let (r_lo, r_hi) = (ratio(lo), ratio(hi));
    let quartic = (r_hi - r_lo) / (hi * hi - lo * lo);
    let quadratic = r_lo - quartic * lo * lo;
    (quadratic, quartic)
}

/// Smallest `η` at which the paper-mode ground level leaves the tunneling
/// regime `0 < E < V₀`.
pub fn validity_boundary() -> f64 {
    validity_boundary_for(CoefficientMode::Paper)
}

pub fn validity_boundary_for(mode: CoefficientMode) -> f64 {
    let bound = |eta: f64| epsilon(eta, mode).map(|e| level_is_bound(eta, e)).unwrap_or(false);
    // Scan for the first failing grid point, then bisect.
    let step = 1e-3;
    let mut lo = step;
    let mut hi = lo;
    while bound(hi) {
        lo = hi;
        hi += step;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if bound(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}
