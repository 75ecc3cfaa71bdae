//! Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for
//! selected eigenvalues and inverse iteration for their eigenvectors.

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix with diagonal `diag` and off-diagonal `off`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Eigen(format!(
                "diagonal of length {} with off-diagonal of length {}",
                diag.len(),
                off.len()
            )));
        }
        Ok(SymTridiagonal { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        (0..n).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 } + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            (lo.min(self.diag[i] - r), hi.max(self.diag[i] + r))
        })
    }

    fn norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt() * self.norm().max(1.0);
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.len() {
            if i > 0 {
                q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q;
            }
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `index`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, index: usize) -> Result<f64> {
        if index >= self.len() {
            return Err(Error::Eigen(format!(
                "eigenvalue {index} of a {}x{} matrix",
                self.len(),
                self.len()
            )));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let scale = self.norm();
        for _ in 0..256 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 2.0 * f64::EPSILON * scale.max(mid.abs()) || mid <= lo || mid >= hi {
                return Ok(mid);
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::Eigen(format!(
            "bisection for eigenvalue {index} did not converge"
        )))
    }

    pub fn lowest(&self, k: usize) -> Result<Vec<f64>> {
        (0..k).map(|i| self.eigenvalue(i)).collect()
    }

    /// Unit eigenvector for an eigenvalue approximation `shift`.
    ///
    /// The sign is fixed so the component of largest magnitude is positive.
    pub fn eigenvector(&self, shift: f64) -> Result<Vec<f64>> {
        let n = self.len();
        let lu = ShiftedLu::factor(self, shift);
        // Deterministic start vector with no special symmetry.
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i as f64) * 0.7).sin()).collect();
        for _ in 0..4 {
            lu.solve(&mut x);
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if !norm.is_finite() || norm == 0.0 {
                return Err(Error::Eigen("inverse iteration broke down".into()));
            }
            x.iter_mut().for_each(|v| *v /= norm);
        }
        let peak = x
            .iter()
            .copied()
            .fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
        if peak < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
        Ok(x)
    }

    /// `y = T x`
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * x[i + 1];
                }
                s
            })
            .collect()
    }
}

/// LU factors of `T − σI` with partial pivoting (row interchanges create a
/// second superdiagonal).
struct ShiftedLu {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
    upper2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(t: &SymTridiagonal, shift: f64) -> Self {
        let n = t.len();
        let mut lower = t.off.clone();
        let mut diag: Vec<f64> = t.diag.iter().map(|d| d - shift).collect();
        let mut upper = t.off.clone();
        let mut upper2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if diag[i].abs() >= lower[i].abs() {
                if diag[i] != 0.0 {
                    let fact = lower[i] / diag[i];
                    lower[i] = fact;
                    diag[i + 1] -= fact * upper[i];
                }
            } else {
                let fact = diag[i] / lower[i];
                diag[i] = lower[i];
                lower[i] = fact;
                let temp = upper[i];
                upper[i] = diag[i + 1];
                diag[i + 1] = temp - fact * diag[i + 1];
                if i + 2 < n {
                    upper2[i] = upper[i + 1];
                    upper[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        let floor = f64::EPSILON * t.norm().max(f64::MIN_POSITIVE);
        for d in &mut diag {
            if d.abs() < floor {
                *d = if *d < 0.0 { -floor } else { floor };
            }
        }
        ShiftedLu {
            lower,
            diag,
            upper,
            upper2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.diag.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.lower[i] * b[i];
            } else {
                b[i + 1] -= self.lower[i] * b[i];
            }
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= self.upper[i] * b[i + 1];
            }
            if i + 2 < n {
                s -= self.upper2[i] * b[i + 2];
            }
            b[i] = s / self.diag[i];
        }
    }
}
