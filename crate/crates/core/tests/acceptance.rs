//! End-to-end acceptance checks. Each test prints one `criterion N: PASS|FAIL`
//! line before asserting.

use std::f64::consts::{E, PI};

use wkb_splitting::cli::{sweep, table1, write_csv, ReportRow, Spacing, SweepSpec};
use wkb_splitting::perturbation::{
    epsilon_closed_form, epsilon_series_coefficients, perturbed_level, rs_engine, AnharmonicExpansion, CoefficientMode,
    Order,
};
use wkb_splitting::semiclassics::{
    crossing_point, delta_factor, splitting_asymptotic, splitting_asymptotic_uncorrected, splitting_instanton,
    splitting_wkb_exact, turning_points, SplittingReport,
};
use wkb_splitting::spectral::{exact_splitting_on, GridSpec};
use wkb_splitting::WellParameters;

fn verdict(n: u32, ok: bool, detail: &str) {
    println!("criterion {n}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n}: {detail}");
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

#[test]
fn criterion_1_table_reproduction() {
    let rows = table1().unwrap();
    let worst = rows
        .iter()
        .map(|r| (r.rounded() - r.published).abs())
        .fold(0.0, f64::max);
    let ok = rows.len() == 8 && rows.iter().all(|r| r.matches);
    verdict(1, ok, &format!("8 rows, worst rounded deviation {worst:.1e}"));
}

#[test]
fn criterion_2_crossing_point() {
    let root = crossing_point(0.11, 0.14).unwrap();
    verdict(2, (root - 0.122513).abs() <= 5e-6, &format!("root at eta = {root:.7}"));
}

#[test]
fn criterion_3_uncorrected_limit() {
    let target = (E / PI).sqrt();
    let mut worst: f64 = 0.0;
    for eta in linspace(0.01, 0.3, 30) {
        let p = WellParameters::from_eta(eta).unwrap();
        let r = splitting_asymptotic_uncorrected(&p).ratio_to(&splitting_instanton(&p));
        worst = worst.max((r - target).abs());
    }
    let delta = delta_factor(0.005).unwrap();
    let ok = worst <= 1e-6 && (delta - 1.0).abs() <= 1e-3;
    verdict(
        3,
        ok,
        &format!("ratio deviation {worst:.1e} from {target:.7}, delta(0.005) = {delta:.6}"),
    );
}

#[test]
fn criterion_4_perturbation_engine() {
    let mut worst: f64 = 0.0;
    for eta in linspace(0.01, 0.2, 50) {
        let p = WellParameters::from_eta(eta).unwrap();
        let rs = rs_engine(&AnharmonicExpansion::new(p, CoefficientMode::Paper), Order::Second, 8).unwrap();
        worst = worst.max((rs - epsilon_closed_form(eta).unwrap()).abs());
    }
    let (a, b) = epsilon_series_coefficients(CoefficientMode::Paper);
    let coeff = (a - 25.0 / 16.0).abs().max((b + 189.0 / 16.0).abs());
    let ok = worst <= 1e-12 && coeff <= 1e-12;
    verdict(4, ok, &format!("engine deviation {worst:.1e}, coefficients ({a}, {b})"));
}

#[test]
fn criterion_5_quadrature_vs_asymptotic() {
    let gaps: Vec<f64> = [0.12, 0.10, 0.08, 0.06]
        .iter()
        .map(|&eta| {
            let p = WellParameters::from_eta(eta).unwrap();
            let level = perturbed_level(&p, CoefficientMode::Paper);
            let exact = splitting_wkb_exact(&p, &level, 1e-12).unwrap();
            (exact.ratio_to(&splitting_asymptotic(&p).unwrap()) - 1.0).abs()
        })
        .collect();
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    let ok = decreasing && gaps[2] < 0.05;
    let shown: Vec<String> = gaps.iter().map(|g| format!("{g:.3e}")).collect();
    verdict(
        5,
        ok,
        &format!(
            "gaps at 0.12, 0.10, 0.08, 0.06: [{}], strictly decreasing = {decreasing}",
            shown.join(", ")
        ),
    );
}

#[test]
fn criterion_6_turning_point_residuals() {
    let mut worst: f64 = 0.0;
    for eta in linspace(0.01, 0.3, 59) {
        let p = WellParameters::from_eta(eta).unwrap();
        let level = perturbed_level(&p, CoefficientMode::Paper);
        let tp = turning_points(&p, &level).unwrap();
        for x in [tp.alpha, tp.gamma] {
            worst = worst.max((p.potential(x) - level.energy).abs() / level.energy);
        }
    }
    verdict(6, worst <= 1e-10, &format!("worst relative residual {worst:.1e}"));
}

#[test]
fn criterion_7_spectral_cross_check() {
    let etas = [0.14, 0.16, 0.18, 0.20];
    let mut ln_gap = Vec::new();
    let mut ratios = Vec::new();
    for eta in etas {
        let p = WellParameters::from_eta(eta).unwrap();
        let exact = exact_splitting_on(&p, &GridSpec::for_params(&p, 4001).unwrap()).unwrap();
        let reduced = exact.value / p.hbar_omega();
        ln_gap.push(reduced.ln());
        ratios.push(splitting_asymptotic(&p).unwrap().reduced() / reduced);
    }
    let inv: Vec<f64> = etas.iter().map(|e| 1.0 / (e * e)).collect();
    let slopes: Vec<f64> = (1..etas.len())
        .map(|i| (ln_gap[i] - ln_gap[i - 1]) / (inv[i] - inv[i - 1]))
        .collect();
    let target = -2.0 / 3.0;
    let ok = slopes.iter().all(|s| *s < 0.0 && ((s - target) / target).abs() <= 0.15)
        && ratios.iter().all(|r| (0.5..=2.0).contains(r));
    verdict(
        7,
        ok,
        &format!("log-slopes {slopes:.4?}, asymptotic/exact {ratios:.4?}"),
    );
}

#[test]
fn criterion_8_scale_invariance() {
    let mut worst: f64 = 0.0;
    for eta in [0.05, 0.1, 0.13, 0.2] {
        let a = WellParameters::from_eta(eta).unwrap();
        let b = WellParameters::with_eta(3.7, 0.02, 6.5e-3, eta).unwrap();
        let ra = ReportRow::new(&SplittingReport::compute(&a, 1e-10).unwrap(), &a);
        let rb = ReportRow::new(&SplittingReport::compute(&b, 1e-10).unwrap(), &b);
        let (ca, cb) = (ra.to_csv_line(), rb.to_csv_line());
        for (x, y) in ca.split(',').zip(cb.split(',')) {
            let (x, y): (f64, f64) = (x.parse().unwrap(), y.parse().unwrap());
            worst = worst.max((x - y).abs() / x.abs().max(1e-300));
        }
    }
    verdict(
        8,
        worst <= 1e-10,
        &format!("worst relative column difference {worst:.1e}"),
    );
}

#[test]
fn criterion_9_determinism() {
    let spec = SweepSpec::new(0.02, 0.15, 100, Spacing::Linear).unwrap();
    let render = |parallel: bool, threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let rows = pool.install(|| sweep(&spec, 1e-10, parallel)).unwrap();
        let mut bytes = Vec::new();
        write_csv(&rows, &mut bytes).unwrap();
        bytes
    };
    let reference = render(false, 1);
    let runs = [
        render(false, 1),
        render(true, 1),
        render(true, 3),
        render(true, 8),
        render(true, 8),
    ];
    let ok = runs.iter().all(|r| *r == reference);
    verdict(
        9,
        ok,
        &format!("{} bytes, {} schedules compared", reference.len(), runs.len()),
    );
}
