#![allow(dead_code)]

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration on Pₙ.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            let mut x = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> f64 {
    let (c, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    gauss_legendre(n).iter().map(|(x, w)| w * f(c + h * x)).sum::<f64>() * h
}

/// Reduced turning points `α/a`, `γ/a` from `η` and `ε`.
pub fn reduced_turning_points(eta: f64, eps: f64) -> (f64, f64) {
    let spread = 2.0 * eta * (1.0 + eps).sqrt();
    ((1.0 - spread).sqrt(), (1.0 + spread).sqrt())
}

/// `S` through `ξ = α sin φ`, a smooth integrand on `[0, π/2]`.
pub fn action_oracle(eta: f64, eps: f64) -> f64 {
    let (a, g) = reduced_turning_points(eta, eps);
    let f = |phi: f64| {
        let (s, c) = phi.sin_cos();
        a * a * c * c * (g * g - a * a * s * s).sqrt()
    };
    integrate(f, 0.0, PI / 2.0, 96) / (eta * eta)
}

/// `ωT` through `ξ = α cos²θ + γ sin²θ`, which removes both endpoint singularities.
pub fn omega_period_oracle(eta: f64, eps: f64) -> f64 {
    let (a, g) = reduced_turning_points(eta, eps);
    let f = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let x = a * c * c + g * s * s;
        8.0 / ((x + a) * (g + x)).sqrt()
    };
    integrate(f, 0.0, PI / 2.0, 96)
}

/// `ωT = 2π / AGM(α/a, γ/a)`, the complete elliptic integral in closed form.
pub fn omega_period_agm(eta: f64, eps: f64) -> f64 {
    let (mut x, mut y) = reduced_turning_points(eta, eps);
    for _ in 0..64 {
        let next = (0.5 * (x + y), (x * y).sqrt());
        if next == (x, y) {
            break;
        }
        (x, y) = next;
    }
    2.0 * PI / x
}

pub fn epsilon(eta: f64) -> f64 {
    eta * eta / 16.0 * (25.0 - 189.0 * eta * eta)
}
