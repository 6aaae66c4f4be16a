//! Command-line front end.
//!
//! Every subcommand produces a [`Report`] with a `checks` array and a
//! status; the exit code is 0 when all checks pass, 1 when a mathematical
//! check fails and 2 on input errors.

mod commands;
mod report;

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::error::Error;
use crate::DEFAULT_TOL;

pub use report::{Check, Report, Status};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "pseudoherm",
    version,
    about = "Metric operators for pseudo-Hermitian Hamiltonians"
)]
pub struct RunConfig {
    /// Relative tolerance for numerical checks.
    #[arg(long, global = true, allow_hyphen_values = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    /// Seed for the randomized metric search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

/// Alias kept for `main`.
pub type Cli = RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check that ETA intertwines HAMILTONIAN and classify it.
    Verify {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long)]
        eta: PathBuf,
    },
    /// Solve for every Hermitian metric of HAMILTONIAN.
    Solve {
        #[arg(long)]
        hamiltonian: PathBuf,
        /// Search for a positive metric rather than any invertible one.
        #[arg(long)]
        positive: bool,
    },
    /// Generate eta_k = (H†)^k eta.
    Chain {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long)]
        eta: PathBuf,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        /// Keep the raw powers instead of unit-norm elements.
        #[arg(long)]
        no_normalize: bool,
        /// Build the chain on H + alpha I when H is singular.
        #[arg(long)]
        shift: bool,
    },
    /// Perturb H by f(K) with K Hermitian and commuting with eta.
    Perturb {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long)]
        eta: PathBuf,
        /// Perturbation K; defaults to eta itself, giving H + f(eta).
        #[arg(long)]
        k: Option<PathBuf>,
        /// Real coefficients of f, constant term first, e.g. "0,3".
        #[arg(long, default_value = "0,1")]
        f: String,
        #[arg(long)]
        allow_hermitian: bool,
    },
    /// Square root of a positive metric and the equivalent Hermitian Hamiltonian.
    Quasi {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long)]
        eta: PathBuf,
        /// Vectors for the induced inner product <phi|eta psi>.
        #[arg(long, requires = "psi")]
        phi: Option<PathBuf>,
        #[arg(long, requires = "phi")]
        psi: Option<PathBuf>,
    },
    /// Exact check of e^{-theta p} pseudo-Hermiticity for a shifted potential.
    Weyl {
        #[arg(long)]
        spec: PathBuf,
        /// Override theta (default 2 gamma).
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        /// Use double-precision coefficients with a tolerance instead of exact rationals.
        #[arg(long)]
        float: bool,
    },
    /// Write a catalog Hamiltonian and its metric.
    Example(ExampleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ExampleArgs {
    #[command(subcommand)]
    pub which: ExampleKind,
    /// Directory for the generated files.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Subcommand)]
pub enum ExampleKind {
    /// Two-point axis, H = [[x, y], [conj y, conj x]].
    TwoPoint {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        x: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
        y: Complex64,
    },
    /// Two-level oscillator, H = [[0, i], [-i omega^2, 0]].
    Oscillator {
        #[arg(long, allow_hyphen_values = true)]
        omega: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Solve { .. } => "solve",
            Command::Chain { .. } => "chain",
            Command::Perturb { .. } => "perturb",
            Command::Quasi { .. } => "quasi",
            Command::Weyl { .. } => "weyl",
            Command::Example(_) => "example",
        }
    }
}

/// Parses `a+bi` style complex literals: `3`, `-2.5`, `1+1i`, `1-2i`, `i`, `-0.5i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    let bad = || format!("cannot parse {s:?} as a complex number (expected a+bi)");
    let num = |x: &str| x.parse::<f64>().map_err(|_| bad());
    let z = match t.strip_suffix('i').or_else(|| t.strip_suffix('j')) {
        None => Complex64::new(num(&t)?, 0.0),
        Some(body) => {
            // split at the last sign that is not an exponent sign
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
            let (re, im) = match split {
                Some(k) => (num(&body[..k])?, &body[k..]),
                None => (0.0, body),
            };
            let im = match im {
                "" | "+" => 1.0,
                "-" => -1.0,
                other => num(other)?,
            };
            Complex64::new(re, im)
        }
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

/// Runs one command and returns its report and exit code.
pub fn run(config: &RunConfig) -> (Report, u8) {
    let mut report = Report::new(config.command.name());
    report.input("tol", serde_json::json!(config.tol));
    report.input("seed", serde_json::json!(config.seed));
    if !(config.tol > 0.0 && config.tol.is_finite()) {
        report.check(Check::holds("input_valid", false));
        report.input_error(format!("tolerance must be positive, got {}", config.tol));
        let code = report.status.exit_code();
        return (report, code);
    }
    if let Err(e) = commands::dispatch(config, &mut report) {
        report.check(Check::holds(failed_check_name(&e), false));
        if is_input_error(&e) {
            report.input_error(e.to_string());
        } else {
            report.fail_with(e.to_string());
        }
    } else {
        report.settle();
    }
    let code = report.status.exit_code();
    (report, code)
}

/// Missing files, malformed JSON, bad shapes and invalid parameters are
/// input errors; violated mathematical hypotheses are check failures.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Io { .. }
            | Error::Json { .. }
            | Error::DimensionMismatch { .. }
            | Error::Empty
            | Error::Ragged { .. }
            | Error::NonFinite { .. }
            | Error::InvalidParameter(_)
    )
}

fn failed_check_name(e: &Error) -> String {
    match e {
        Error::NotHermitian { what, .. } => format!("{}_hermitian", what.to_lowercase()),
        Error::NotCommuting { .. } => "k_commutes_with_eta".into(),
        Error::NotAMetric { .. } => "eta_intertwines_h".into(),
        Error::HermitianHamiltonian => "h_non_hermitian".into(),
        Error::NotPositive { .. } => "eta_positive".into(),
        Error::ShiftLadderExhausted { .. } | Error::Numerical(_) => "numerical".into(),
        _ => "input_valid".into(),
    }
}

/// Runs the command, writes the report, and returns the process exit code.
pub fn execute(config: &RunConfig) -> u8 {
    let (report, code) = run(config);
    let text = match config.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &config.out {
        Some(path) => match fs::write(path, text) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("cannot write report to {}: {e}", path.display());
                Status::InputError.exit_code()
            }
        },
        None => {
            print!("{text}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), c(-2.5, 0.0));
        assert_eq!(parse_complex("1+1i").unwrap(), c(1.0, 1.0));
        assert_eq!(parse_complex("1-2i").unwrap(), c(1.0, -2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("-0.5i").unwrap(), c(0.0, -0.5));
        assert_eq!(parse_complex("1e-3+2e2i").unwrap(), c(1e-3, 200.0));
        assert_eq!(parse_complex("1e-3-1e-2i").unwrap(), c(1e-3, -1e-2));
        assert_eq!(parse_complex(" 2 + 3i ").unwrap(), c(2.0, 3.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("inf").is_err());
    }
}
