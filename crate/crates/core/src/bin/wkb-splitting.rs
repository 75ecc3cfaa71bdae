use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use wkb_splitting::cli::config::{pick, Config};
use wkb_splitting::cli::{
    self, render_table, splitting_point, sweep, table1, validate, write_csv, Method, Spacing, SweepSpec, EXIT_MISMATCH,
    EXIT_OK, EXIT_USAGE,
};
use wkb_splitting::{Error, WellParameters};

/// Tunneling splitting in a symmetric quartic double well.
#[derive(Parser)]
#[command(version)]
struct Opts {
    /// TOML file with defaults (flags take precedence).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the WKB/instanton ratio table for 0.1 <= eta <= 0.15.
    Table1,
    /// Write a CSV sweep of every quantity over an eta grid.
    Sweep {
        #[arg(long)]
        eta_min: Option<f64>,
        #[arg(long)]
        eta_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum)]
        spacing: Option<Spacing>,
        /// Output path.
        #[arg(long)]
        out: PathBuf,
        /// Relative quadrature tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Evaluate grid points on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Splitting at one parameter point.
    #[command(group(ArgGroup::new("size").required(true).args(["eta", "a"])))]
    Splitting {
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        omega: Option<f64>,
        /// Half separation of the minima; alternative to --eta.
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        hbar: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run the invariant suite.
    Validate {
        /// Machine-readable summary.
        #[arg(long)]
        json: bool,
    },
}

fn run(opts: Opts) -> Result<i32, Error> {
    let config = match &opts.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    match opts.command {
        Command::Table1 => {
            let rows = table1()?;
            print!("{}", render_table(&rows));
            let bad: Vec<String> = rows.iter().filter(|r| !r.matches).map(|r| r.eta.to_string()).collect();
            if bad.is_empty() {
                Ok(EXIT_OK)
            } else {
                eprintln!("mismatched rows: {}", bad.join(", "));
                Ok(EXIT_MISMATCH)
            }
        }
        Command::Sweep {
            eta_min,
            eta_max,
            steps,
            spacing,
            out,
            tol,
            sequential,
        } => {
            let defaults = SweepSpec::default();
            let file = &config.sweep;
            let spec = SweepSpec::new(
                pick(eta_min, file.eta_min, defaults.eta_min),
                pick(eta_max, file.eta_max, defaults.eta_max),
                pick(steps, file.steps, defaults.steps),
                pick(spacing, file.spacing, defaults.spacing),
            )?;
            let rows = sweep(&spec, config.tolerance(tol), !sequential)?;
            let file = File::create(&out).map_err(|e| Error::Config(format!("{}: {e}", out.display())))?;
            write_csv(&rows, BufWriter::new(file)).map_err(|e| Error::Config(format!("{}: {e}", out.display())))?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
            Ok(EXIT_OK)
        }
        Command::Splitting {
            eta,
            method,
            m,
            omega,
            a,
            hbar,
            tol,
        } => {
            let units = &config.units;
            let m = pick(m, units.m, 1.0);
            let omega = pick(omega, units.omega, 1.0);
            let hbar = pick(hbar, units.hbar, 1.0);
            let p = match (eta, a) {
                (_, Some(a)) => WellParameters::new(m, omega, a, hbar)?,
                (Some(eta), None) => WellParameters::with_eta(m, omega, hbar, eta)?,
                (None, None) => unreachable!("clap requires --eta or --a"),
            };
            let result = splitting_point(&p, method, config.tolerance(tol))?;
            println!("{}", result.line());
            Ok(EXIT_OK)
        }
        Command::Validate { json } => {
            let report = validate::run();
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render());
            }
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let opts = Opts::parse();
    let code = match run(opts) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            cli::exit_code(&e)
        }
    };
    ExitCode::from(u8::try_from(code).unwrap_or(EXIT_USAGE as u8))
}
