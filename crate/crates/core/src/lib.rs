//! Tunneling splitting of the ground doublet in the symmetric quartic double
//! well `V(x) = mω²/(8a²) (x − a)²(x + a)²`.
//!
//! Three semiclassical routes are provided:
//!
//! - the WKB formula `ΔE = (2ħ/T) e^{−S}` with the action and period
//!   integrals evaluated by tanh-sinh quadrature at the anharmonically shifted
//!   level ([`semiclassics::splitting_wkb_exact`]);
//! - its small-η asymptotic form with the correction factor `δ(η)`
//!   ([`semiclassics::splitting_asymptotic`]);
//! - the instanton result ([`semiclassics::splitting_instanton`]).
//!
//! [`perturbation`] derives the level shift `ε(η)` and [`spectral`] solves
//! the Schrödinger equation on a grid for the true splitting.

pub mod cli;
pub mod error;
pub mod model;
pub mod perturbation;
pub mod quadrature;
pub mod semiclassics;
pub mod spectral;
pub mod tridiag;

pub use error::{Error, Result};
pub use model::{PotentialShape, WellParameters};
pub use perturbation::{CoefficientMode, PerturbedLevel};
pub use semiclassics::{Splitting, SplittingReport, TurningPoints};
pub use spectral::{GridSpec, SpectrumResult};
