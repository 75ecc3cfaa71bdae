//! Cross-module invariant suite behind `validate`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{potential, WellParameters};
use crate::perturbation::{
    epsilon_closed_form, epsilon_series_coefficients, perturbed_level, rs_engine, AnharmonicExpansion, CoefficientMode,
    Order,
};
use crate::semiclassics::{
    action_s, crossing_point, delta_factor, period_t, ratio_wkb_instanton, splitting_asymptotic, splitting_instanton,
    splitting_wkb_exact, turning_points, uncorrected_ratio, SplittingReport,
};
use crate::spectral::exact_splitting;

use super::{table1, EXIT_MISMATCH, EXIT_OK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn new(checks: Vec<Check>) -> Self {
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        let fail = count(Status::Fail);
        ValidationReport {
            passed: fail == 0,
            pass: count(Status::Pass),
            fail,
            skipped: count(Status::Skipped),
            checks,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_OK
        } else {
            EXIT_MISMATCH
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            writeln!(out, "{tag:<5} {:<44} {}", c.name, c.detail).unwrap();
        }
        writeln!(
            out,
            "{} passed, {} failed, {} skipped",
            self.pass, self.fail, self.skipped
        )
        .unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn check(name: &str, outcome: Result<(bool, String)>) -> Check {
    let (status, detail) = match outcome {
        Ok((true, detail)) => (Status::Pass, detail),
        Ok((false, detail)) => (Status::Fail, detail),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    Check {
        name: name.to_string(),
        status,
        detail,
    }
}

fn natural(eta: f64) -> Result<WellParameters> {
    WellParameters::from_eta(eta)
}

fn engine_vs_closed_form() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let eta = 0.01 + 0.19 * i as f64 / 49.0;
        let exp = AnharmonicExpansion::new(natural(eta)?, CoefficientMode::Paper);
        worst = worst.max((rs_engine(&exp, Order::Second, 5)? - epsilon_closed_form(eta)?).abs());
    }
    Ok((worst <= 1e-12, format!("max |diff| = {worst:.2e} over 50 points")))
}

fn series_coefficients() -> Result<(bool, String)> {
    let (a, b) = epsilon_series_coefficients(CoefficientMode::Paper);
    let ok = (a - 25.0 / 16.0).abs() <= 1e-12 && (b + 189.0 / 16.0).abs() <= 1e-12;
    Ok((ok, format!("({a}, {b})")))
}

fn truncation_stability() -> Result<(bool, String)> {
    let exp = AnharmonicExpansion::new(natural(0.1)?, CoefficientMode::Paper);
    let base = rs_engine(&exp, Order::Second, 5)?;
    let mut worst: f64 = 0.0;
    for n in [8, 16] {
        worst = worst.max((rs_engine(&exp, Order::Second, n)? - base).abs());
    }
    Ok((
        worst <= 1e-14,
        format!("max change {worst:.1e} for truncation 5, 8, 16"),
    ))
}

fn turning_point_residuals() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for i in 0..=290 {
        let eta = 0.01 + i as f64 * 1e-3;
        let p = natural(eta)?;
        let level = perturbed_level(&p, CoefficientMode::Paper);
        let tp = turning_points(&p, &level)?;
        for x in [tp.alpha, tp.gamma] {
            worst = worst.max((potential(&p, x) - level.energy).abs() / level.energy);
        }
    }
    Ok((
        worst <= 1e-10,
        format!("max relative residual {worst:.1e} on [0.01, 0.3]"),
    ))
}

fn quadrature_convergence() -> Result<(bool, String)> {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for eta in [0.06, 0.1, 0.15] {
        let p = natural(eta)?;
        let level = perturbed_level(&p, CoefficientMode::Paper);
        let tp = turning_points(&p, &level)?;
        let (s_coarse, s_fine) = (action_s(&p, &level, &tp, 1e-8)?, action_s(&p, &level, &tp, 1e-10)?);
        let (t_coarse, t_fine) = (period_t(&p, &level, &tp, 1e-8)?, period_t(&p, &level, &tp, 1e-10)?);
        let ds = (s_fine.value - s_coarse.value).abs();
        let dt = (t_fine.value - t_coarse.value).abs();
        ok &= ds <= s_coarse.error && dt <= t_coarse.error;
        worst = worst.max(ds / s_fine.value).max(dt / t_fine.value);
    }
    Ok((ok, format!("max relative change {worst:.1e} from tol 1e-8 to 1e-10")))
}

fn table_goldens() -> Result<(bool, String)> {
    let rows = table1()?;
    let bad: Vec<String> = rows.iter().filter(|r| !r.matches).map(|r| r.eta.to_string()).collect();
    Ok((
        bad.is_empty(),
        if bad.is_empty() {
            "8/8 rows within 1e-5".into()
        } else {
            format!("mismatched rows: {}", bad.join(", "))
        },
    ))
}

fn crossing() -> Result<(bool, String)> {
    let eta = crossing_point(0.1, 0.15)?;
    Ok(((eta - 0.122513).abs() <= 5e-6, format!("ratio = 1 at eta = {eta:.7}")))
}

fn uncorrected_limit() -> Result<(bool, String)> {
    let r = uncorrected_ratio();
    let d = delta_factor(0.005)?;
    Ok((
        (r - (std::f64::consts::E / std::f64::consts::PI).sqrt()).abs() <= 1e-6
            && (r - 0.9301914).abs() <= 1e-7
            && (d - 1.0).abs() <= 1e-3,
        format!("sqrt(e/pi) = {r:.7}, delta(0.005) = {d:.6}"),
    ))
}

fn consistency_triangle() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for i in 0..=40 {
        let eta = 0.01 + i as f64 * 0.01;
        let p = natural(eta)?;
        let lhs = ratio_wkb_instanton(eta)? * splitting_instanton(&p).reduced();
        let rhs = splitting_asymptotic(&p)?.reduced();
        worst = worst.max((lhs / rhs - 1.0).abs());
    }
    Ok((worst <= 1e-12, format!("max relative gap {worst:.1e} on [0.01, 0.41]")))
}

fn monotone_ratio() -> Result<(bool, String)> {
    let values = (0..=100)
        .map(|i| ratio_wkb_instanton(0.1 + 0.05 * i as f64 / 100.0))
        .collect::<Result<Vec<_>>>()?;
    let ok = values.windows(2).all(|w| w[0] < w[1]);
    Ok((ok, "strictly increasing on [0.1, 0.15]".into()))
}

fn exact_vs_asymptotic() -> Result<(bool, String)> {
    let gap = |eta: f64| -> Result<f64> {
        let p = natural(eta)?;
        let level = perturbed_level(&p, CoefficientMode::Paper);
        let exact = splitting_wkb_exact(&p, &level, 1e-12)?;
        Ok((exact.ratio_to(&splitting_asymptotic(&p)?) - 1.0).abs())
    };
    let at_008 = gap(0.08)?;
    let tail = [gap(0.04)?, gap(0.02)?, gap(0.01)?];
    let ok = at_008 < 0.05 && tail[0] > tail[1] && tail[1] > tail[2];
    Ok((
        ok,
        format!(
            "|exact/asym - 1| = {at_008:.2e} at 0.08; {:.1e}, {:.1e}, {:.1e} at 0.04, 0.02, 0.01",
            tail[0], tail[1], tail[2]
        ),
    ))
}

fn scale_invariance() -> Result<(bool, String)> {
    let eta = 0.11;
    let a = SplittingReport::compute(&natural(eta)?, 1e-10)?;
    let b = SplittingReport::compute(&WellParameters::with_eta(3.7, 0.23, 2.1, eta)?, 1e-10)?;
    let pairs = [
        (a.epsilon, b.epsilon),
        (a.action.value, b.action.value),
        (a.omega_period, b.omega_period),
        (a.wkb.ln_reduced, b.wkb.ln_reduced),
        (a.asymptotic.ln_reduced, b.asymptotic.ln_reduced),
        (a.instanton.ln_reduced, b.instanton.ln_reduced),
        (a.delta, b.delta),
        (a.ratio_wkb_instanton, b.ratio_wkb_instanton),
    ];
    let worst = pairs.iter().map(|(x, y)| ((x - y) / x).abs()).fold(0.0, f64::max);
    Ok((worst <= 1e-10, format!("max relative difference {worst:.1e}")))
}

const SPECTRAL_ETAS: [f64; 4] = [0.14, 0.16, 0.18, 0.20];

fn spectral_checks(checks: &mut Vec<Check>) {
    let mut points = Vec::new();
    for eta in SPECTRAL_ETAS {
        let name = format!("spectral.cross_check eta={eta}");
        let outcome = natural(eta).and_then(|p| {
            let exact = exact_splitting(&p)?;
            let ratio = splitting_asymptotic(&p)?.energy() / exact.value;
            points.push((eta, exact.value));
            Ok((
                exact.value > 0.0 && (0.5..=2.0).contains(&ratio),
                format!(
                    "dE = {:.4e} +/- {:.1e}, asym/exact = {ratio:.4}",
                    exact.value, exact.error
                ),
            ))
        });
        checks.push(check(&name, outcome));
    }

    let slope = (|| -> Result<(bool, String)> {
        if points.len() != SPECTRAL_ETAS.len() {
            return Err(Error::Eigen("missing spectral points".into()));
        }
        let xs: Vec<f64> = points.iter().map(|(eta, _)| 1.0 / (eta * eta)).collect();
        let ys: Vec<f64> = points.iter().map(|(_, de)| de.ln()).collect();
        let n = xs.len() as f64;
        let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        let slope = sxy / sxx;
        let decreasing = points.windows(2).all(|w| w[0].1 < w[1].1);
        Ok((
            decreasing && (slope / (-2.0 / 3.0) - 1.0).abs() <= 0.15,
            format!("slope of ln dE vs 1/eta^2 = {slope:.4}"),
        ))
    })();
    checks.push(check("spectral.log_slope", slope));

    let guard = natural(0.05).and_then(|p| exact_splitting(&p));
    checks.push(match guard {
        Err(Error::BelowResolution { .. }) => Check {
            name: "spectral.guard eta=0.05".into(),
            status: Status::Skipped,
            detail: "skipped: below resolution".into(),
        },
        Ok(s) => check(
            "spectral.guard eta=0.05",
            Ok((true, format!("resolved: dE = {:.3e}", s.value))),
        ),
        Err(e) => check("spectral.guard eta=0.05", Err(e)),
    });
}

pub fn run() -> ValidationReport {
    let mut checks = vec![
        check("perturbation.engine_vs_closed_form", engine_vs_closed_form()),
        check("perturbation.series_coefficients", series_coefficients()),
        check("perturbation.truncation_stability", truncation_stability()),
        check("semiclassics.turning_point_residuals", turning_point_residuals()),
        check("semiclassics.quadrature_convergence", quadrature_convergence()),
        check("semiclassics.table1", table_goldens()),
        check("semiclassics.crossing_point", crossing()),
        check("semiclassics.uncorrected_limit", uncorrected_limit()),
        check("semiclassics.consistency_triangle", consistency_triangle()),
        check("semiclassics.monotone_ratio", monotone_ratio()),
        check("semiclassics.exact_vs_asymptotic", exact_vs_asymptotic()),
        check("model.scale_invariance", scale_invariance()),
    ];
    spectral_checks(&mut checks);
    ValidationReport::new(checks)
}
