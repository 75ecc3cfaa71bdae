use wkb_splitting::perturbation::{perturbed_level, CoefficientMode};
use wkb_splitting::semiclassics::{splitting_asymptotic, splitting_wkb_exact};
use wkb_splitting::spectral::{exact_splitting, exact_splitting_on, solve_spectrum, solve_spectrum_with, GridSpec};
use wkb_splitting::{Error, WellParameters};

fn raw_gap(p: &WellParameters, points: usize) -> f64 {
    let grid = GridSpec::for_params(p, points).unwrap();
    solve_spectrum(p, &grid, 2).unwrap().coarse.splitting
}

#[test]
fn second_order_convergence() {
    let p = WellParameters::from_eta(0.2).unwrap();
    let (g1, g2, g3) = (raw_gap(&p, 801), raw_gap(&p, 1601), raw_gap(&p, 3201));
    let ratio = (g1 - g2) / (g2 - g3);
    assert!((ratio - 4.0).abs() < 0.05, "ratio {ratio}");
}

#[test]
fn oscillator_ladder() {
    let grid = GridSpec::new(10.0, 2001).unwrap();
    let s = solve_spectrum_with(|x| 0.5 * x * x, 1.0, 1.0, &grid, 6).unwrap();
    for (n, (e, err)) in s.eigenvalues.iter().zip(&s.eigenvalue_errors).enumerate() {
        assert!((e - (n as f64 + 0.5)).abs() < 1e-6, "E{n} = {e}");
        assert!(*err < 1e-3);
    }
}

#[test]
fn domain_insensitive() {
    let p = WellParameters::from_eta(0.15).unwrap();
    let base = GridSpec::for_params(&p, 4001).unwrap();
    let wide = GridSpec::new(base.half_width * 1.2, 4801).unwrap();
    let a = exact_splitting_on(&p, &base).unwrap();
    let b = exact_splitting_on(&p, &wide).unwrap();
    assert!(
        (a.value - b.value).abs() < (a.error + b.error).max(1e-10 * a.value),
        "{a:?} {b:?}"
    );
}

#[test]
fn wronskian_matches_direct_gap() {
    let p = WellParameters::from_eta(0.2).unwrap();
    let grid = GridSpec::for_params(&p, 4001).unwrap();
    let s = solve_spectrum(&p, &grid, 2).unwrap();
    // Bisection resolves eigenvalues to about eps·||H|| ~ 1e-11 here.
    for sol in [&s.coarse, &s.fine] {
        assert!((sol.direct_splitting - sol.splitting).abs() < 1e-10, "{sol:?}");
    }
}

#[test]
fn semiclassics_close_to_exact() {
    for (eta, bound) in [(0.1, 0.02), (0.12, 0.03), (0.15, 0.1)] {
        let p = WellParameters::from_eta(eta).unwrap();
        let exact = exact_splitting(&p).unwrap().value / p.hbar_omega();
        let level = perturbed_level(&p, CoefficientMode::Paper);
        let wkb = splitting_wkb_exact(&p, &level, 1e-10).unwrap().reduced();
        let asym = splitting_asymptotic(&p).unwrap().reduced();
        assert!((wkb / exact - 1.0).abs() < bound, "{eta}: {wkb} vs {exact}");
        assert!((asym / exact - 1.0).abs() < bound, "{eta}: {asym} vs {exact}");
    }
}

#[test]
fn resolution_guard() {
    let p = WellParameters::from_eta(0.05).unwrap();
    assert!(matches!(exact_splitting(&p), Err(Error::BelowResolution { .. })));
}

#[test]
fn physical_units_scale_with_hbar_omega() {
    let natural = WellParameters::from_eta(0.18).unwrap();
    let scaled = WellParameters::with_eta(2.5, 3.0, 0.7, 0.18).unwrap();
    let a = exact_splitting(&natural).unwrap();
    let b = exact_splitting(&scaled).unwrap();
    let ratio = b.value / scaled.hbar_omega() / a.value;
    assert!((ratio - 1.0).abs() < 1e-9, "{ratio}");
}
