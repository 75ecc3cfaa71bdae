//! Finite-difference spectrum of the double well, used as ground truth for
//! the semiclassical splittings.
//!
//! The Hamiltonian `−ħ²/2m D₂ + V` is discretized with second-order central
//! differences on `[−L, L]` with Dirichlet ends and a node at the origin.
//! Because the grid is symmetric the matrix splits into even and odd parity
//! blocks. The doublet gap is then taken from the exact discrete Wronskian
//! identity between the even eigenvector `u` and the odd eigenvector `v`,
//!
//! `E_odd − E_even = ħ²/(2mh²) · u₀ v₁ / Σ_{i≥1} u_i v_i`,
//!
//! which keeps full relative precision when the gap is far below the
//! roundoff of the individual eigenvalues (`~ε·ħ²/mh²`).

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::model::WellParameters;
use crate::perturbation::{perturbed_level, CoefficientMode};
use crate::semiclassics::{turning_points, validity_boundary};
use crate::tridiag::SymTridiagonal;

pub const DEFAULT_POINTS: usize = 4001;
/// Margin beyond the outer turning point, in oscillator lengths.
pub const DEFAULT_MARGIN: f64 = 6.0;
const MIN_MARGIN: f64 = 5.0;
const MIN_POINTS: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub half_width: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::Grid(format!("half width {half_width} must be positive")));
        }
        if points < MIN_POINTS {
            return Err(Error::Grid(format!("{points} points; at least {MIN_POINTS} required")));
        }
        if points.is_multiple_of(2) {
            return Err(Error::Grid(format!(
                "{points} points; an odd count is required for a centre node"
            )));
        }
        Ok(GridSpec { half_width, points })
    }

    /// Default grid for `p`: `L = γ + 6 sqrt(ħ/mω)`.
    pub fn for_params(p: &WellParameters, points: usize) -> Result<Self> {
        let level = perturbed_level(p, CoefficientMode::Paper);
        let tp = turning_points(p, &level)?;
        Self::new(tp.gamma + DEFAULT_MARGIN * p.oscillator_length(), points)
    }

    pub fn spacing(&self) -> f64 {
        self.half_width / ((self.points - 1) / 2) as f64
    }

    /// The grid with the spacing halved (`2N − 1` points).
    pub fn refined(&self) -> Self {
        GridSpec {
            half_width: self.half_width,
            points: 2 * self.points - 1,
        }
    }

    /// Checks the decay margin `L > γ + 5 sqrt(ħ/mω)`.
    pub fn check(&self, p: &WellParameters) -> Result<()> {
        let level = perturbed_level(p, CoefficientMode::Paper);
        let tp = turning_points(p, &level)?;
        let needed = tp.gamma + MIN_MARGIN * p.oscillator_length();
        if self.half_width <= needed {
            return Err(Error::Grid(format!(
                "half width {} does not exceed outer turning point plus margin {}",
                self.half_width, needed
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Eigenvalues on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSolution {
    pub points: usize,
    pub spacing: f64,
    /// Lowest levels, alternating even/odd parity.
    pub eigenvalues: Vec<f64>,
    pub parities: Vec<Parity>,
    /// Ground doublet gap from the Wronskian identity.
    pub splitting: f64,
    /// Ground doublet gap as a plain eigenvalue difference of the full matrix.
    pub direct_splitting: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// Richardson-extrapolated lowest eigenvalues, strictly increasing.
    pub eigenvalues: Vec<f64>,
    /// `|fine − coarse| / 3` per eigenvalue.
    pub eigenvalue_errors: Vec<f64>,
    /// Richardson-extrapolated `E₁ − E₀`.
    pub splitting: f64,
    pub splitting_error: f64,
    pub coarse: GridSolution,
    pub fine: GridSolution,
}

fn richardson(coarse: f64, fine: f64) -> (f64, f64) {
    ((4.0 * fine - coarse) / 3.0, (fine - coarse).abs() / 3.0)
}

/// Full Dirichlet Hamiltonian on the interior nodes `−(M−1)h ..= (M−1)h`.
pub fn full_hamiltonian<V>(potential: &V, mass: f64, hbar: f64, grid: &GridSpec) -> SymTridiagonal
where
    V: Fn(f64) -> f64,
{
    let m = ((grid.points - 1) / 2) as i64;
    let h = grid.spacing();
    let kinetic = hbar * hbar / (2.0 * mass * h * h);
    let diag = (-(m - 1)..m).map(|i| 2.0 * kinetic + potential(i as f64 * h)).collect();
    let off = vec![-kinetic; (2 * m - 2) as usize];
    SymTridiagonal { diag, off }
}

fn solve_grid<V>(potential: &V, mass: f64, hbar: f64, grid: &GridSpec, k: usize) -> Result<GridSolution>
where
    V: Fn(f64) -> f64,
{
    let m = (grid.points - 1) / 2;
    let h = grid.spacing();
    let kinetic = hbar * hbar / (2.0 * mass * h * h);
    let diag: Vec<f64> = (0..m).map(|i| 2.0 * kinetic + potential(i as f64 * h)).collect();

    // Even block on nodes 0..M−1, symmetrized by scaling the centre node by 1/√2.
    let mut even_off = vec![-kinetic; m - 1];
    even_off[0] *= SQRT_2;
    let even = SymTridiagonal::new(diag.clone(), even_off)?;
    let odd = SymTridiagonal::new(diag[1..].to_vec(), vec![-kinetic; m - 2])?;

    let mut eigenvalues = Vec::with_capacity(k);
    let mut parities = Vec::with_capacity(k);
    let mut ground_gap = f64::NAN;
    for j in 0..k.div_ceil(2) {
        let even_value = even.eigenvalue(j)?;
        let odd_value = odd.eigenvalue(j)?;
        let mut u = even.eigenvector(even_value)?;
        u[0] *= SQRT_2;
        let mut v = odd.eigenvector(odd_value)?;
        v.insert(0, 0.0);
        let mut overlap: f64 = u[1..].iter().zip(&v[1..]).map(|(a, b)| a * b).sum();
        if overlap < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
            overlap = -overlap;
        }
        let gap = kinetic * u[0] * v[1] / overlap;
        if j == 0 {
            ground_gap = gap;
        }
        eigenvalues.push(even_value);
        parities.push(Parity::Even);
        if eigenvalues.len() < k {
            eigenvalues.push(even_value + gap);
            parities.push(Parity::Odd);
        }
    }

    let direct = full_hamiltonian(potential, mass, hbar, grid).lowest(2)?;
    Ok(GridSolution {
        points: grid.points,
        spacing: h,
        eigenvalues,
        parities,
        splitting: ground_gap,
        direct_splitting: direct[1] - direct[0],
    })
}

/// Lowest `k` levels of an even potential on grids `N` and `2N − 1`.
pub fn solve_spectrum_with<V>(potential: V, mass: f64, hbar: f64, grid: &GridSpec, k: usize) -> Result<SpectrumResult>
where
    V: Fn(f64) -> f64 + Sync,
{
    if k < 2 {
        return Err(Error::Grid(format!(
            "k = {k}; at least the ground doublet (k = 2) is required"
        )));
    }
    GridSpec::new(grid.half_width, grid.points)?;
    let (coarse, fine) = rayon::join(
        || solve_grid(&potential, mass, hbar, grid, k),
        || solve_grid(&potential, mass, hbar, &grid.refined(), k),
    );
    let (coarse, fine) = (coarse?, fine?);
    let (eigenvalues, eigenvalue_errors) = coarse
        .eigenvalues
        .iter()
        .zip(&fine.eigenvalues)
        .map(|(&c, &f)| richardson(c, f))
        .unzip();
    let (splitting, splitting_error) = richardson(coarse.splitting, fine.splitting);
    Ok(SpectrumResult {
        eigenvalues,
        eigenvalue_errors,
        splitting,
        splitting_error,
        coarse,
        fine,
    })
}

/// Lowest `k` levels of the double well.
pub fn solve_spectrum(p: &WellParameters, grid: &GridSpec, k: usize) -> Result<SpectrumResult> {
    grid.check(p)?;
    let p = *p;
    solve_spectrum_with(move |x| p.potential(x), p.mass(), p.hbar(), grid, k)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactSplitting {
    pub value: f64,
    pub error: f64,
}

impl ExactSplitting {
    pub fn ln_value(&self) -> f64 {
        self.value.ln()
    }
}

/// `E₁ − E₀` on the default grid, refused unless it exceeds ten times its
/// discretization estimate.
pub fn exact_splitting(p: &WellParameters) -> Result<ExactSplitting> {
    check_regime(p)?;
    exact_splitting_on(p, &GridSpec::for_params(p, DEFAULT_POINTS)?)
}

fn check_regime(p: &WellParameters) -> Result<()> {
    let eta = p.eta();
    let boundary = validity_boundary();
    if eta >= boundary {
        return Err(Error::OutsideValidity { eta, boundary });
    }
    Ok(())
}

pub fn exact_splitting_on(p: &WellParameters, grid: &GridSpec) -> Result<ExactSplitting> {
    check_regime(p)?;
    let spectrum = solve_spectrum(p, grid, 2)?;
    let (value, error) = (spectrum.splitting, spectrum.splitting_error);
    if !(value.is_finite() && value > 0.0 && value > 10.0 * error) {
        return Err(Error::BelowResolution {
            splitting: value,
            estimate: error,
        });
    }
    Ok(ExactSplitting { value, error })
}
