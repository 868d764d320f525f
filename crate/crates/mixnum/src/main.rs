//! Command-line front end: pair validation, inner products, figure data,
//! orthogonal subsets, interference matrices, and end-to-end experiments,
//! emitted as deterministic CSV/JSON.
//!
//! Exit codes: 0 success, 2 validation error, 3 numeric-domain error,
//! 4 I/O error.

use clap::{Parser, Subcommand, ValueEnum};
use mixnum::closed_form::{
    ini_matrix, orthogonal_subsets, rho_continuous, rho_discrete, RhoMode,
};
use mixnum::oracle::rho_continuous_quadrature;
use mixnum::reports;
use mixnum::sim::{run_experiment, Constellation, ExperimentConfig};
use mixnum::{Error, NumerologyPair};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mixnum",
    version,
    about = "Inter-numerology interference analysis for mixed-numerology OFDM"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RhoModeArg {
    /// Reduced-form continuous-time inner product.
    Continuous,
    /// Reduced-form discrete-time inner product (requires --n1).
    Discrete,
    /// Brute-force adaptive quadrature of the defining integral.
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixModeArg {
    Continuous,
    Discrete,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstellationArg {
    Qpsk,
    #[value(name = "16qam")]
    Qam16,
    Random,
}

impl From<ConstellationArg> for Constellation {
    fn from(arg: ConstellationArg) -> Self {
        match arg {
            ConstellationArg::Qpsk => Constellation::Qpsk,
            ConstellationArg::Qam16 => Constellation::Qam16,
            ConstellationArg::Random => Constellation::RandomPhase,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a numerology pair and print its summary as JSON.
    Pair {
        /// Shared bandwidth in Hz.
        #[arg(long)]
        bandwidth: f64,
        /// Wide subcarrier spacing in Hz.
        #[arg(long)]
        df1: f64,
        /// Narrow subcarrier spacing in Hz.
        #[arg(long)]
        df2: f64,
    },
    /// Print one inner product (re, im, magnitude, d) as JSON.
    Rho {
        /// Scaling factor (power of two, >= 2).
        #[arg(long)]
        nu: u32,
        /// Samples per wide symbol; required for --mode discrete, derived
        /// from the indices otherwise.
        #[arg(long)]
        n1: Option<usize>,
        /// Wide-numerology subcarrier index.
        #[arg(long)]
        m: usize,
        /// Narrow-numerology subcarrier index.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: RhoModeArg,
    },
    /// Emit magnitude-vs-distance curve data as CSV.
    Curve {
        /// Scaling factors, comma separated (e.g. 2,4,8).
        #[arg(long, value_delimiter = ',', required = true)]
        nu: Vec<u32>,
        /// Distance grid as start:stop:step.
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        /// Add discrete-form columns at this sample count.
        #[arg(long)]
        n1: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit discretization-factor tables (beta vs d, and transposed) as CSV.
    Beta {
        /// Sample counts, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n1: Vec<usize>,
        /// Distance grid as start:stop:step.
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the orthogonal subcarrier subsets with co-location flags.
    Subsets {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        n1: usize,
    },
    /// Emit the full inner-product magnitude matrix as CSV.
    Matrix {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        n1: usize,
        #[arg(long, value_enum)]
        mode: MatrixModeArg,
        #[arg(long)]
        out: PathBuf,
        /// Also write a phase matrix (radians) next to the magnitudes.
        #[arg(long)]
        phase: bool,
    },
    /// Run an end-to-end experiment and write its report as JSON.
    Simulate {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        n1: usize,
        /// Number of narrow-numerology symbols (K2).
        #[arg(long)]
        symbols: usize,
        #[arg(long, value_enum)]
        constellation: ConstellationArg,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_range(spec: &str) -> Result<(f64, f64, f64), Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InconsistentConfig(format!(
            "range '{spec}' must be start:stop:step"
        )));
    }
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Error::InconsistentConfig(format!("'{s}' is not a number")))
    };
    Ok((parse(parts[0])?, parse(parts[1])?, parse(parts[2])?))
}

/// Smallest power-of-two sample count that keeps both indices in range.
fn implied_n1(nu: u32, m: usize, n: usize) -> usize {
    let from_narrow = n / nu as usize + 1;
    (m + 1).max(from_narrow).next_power_of_two()
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Pair {
            bandwidth,
            df1,
            df2,
        } => {
            let pair = NumerologyPair::new(bandwidth, df1, df2)?;
            print!("{}", reports::pair_json(&pair));
        }
        Command::Rho { nu, n1, m, n, mode } => {
            if mode == RhoModeArg::Discrete && n1.is_none() {
                return Err(Error::InconsistentConfig(
                    "--mode discrete requires --n1".into(),
                ));
            }
            let n1 = n1.unwrap_or_else(|| implied_n1(nu, m, n));
            let pair = NumerologyPair::from_dimensionless(nu, n1)?;
            let rho = match mode {
                RhoModeArg::Continuous => rho_continuous(&pair, m, n)?,
                RhoModeArg::Discrete => rho_discrete(&pair, m, n)?,
                RhoModeArg::Oracle => rho_continuous_quadrature(&pair, m, n, 1e-11)?,
            };
            print!(
                "{}",
                reports::inner_product_json(rho.value, rho.magnitude, rho.d)
            );
        }
        Command::Curve { nu, d, n1, out } => {
            let (start, stop, step) = parse_range(&d)?;
            let spec = reports::CurveSpec {
                nu_values: nu,
                d_start: start,
                d_stop: stop,
                d_step: step,
                discrete_n1: n1,
            };
            reports::emit_magnitude_curve(&spec, &out)?;
        }
        Command::Beta { n1, d, out } => {
            let (start, stop, step) = parse_range(&d)?;
            reports::emit_beta_surface(&n1, start, stop, step, &out)?;
        }
        Command::Subsets { nu, n1 } => {
            let pair = NumerologyPair::from_dimensionless(nu, n1)?;
            let subsets = orthogonal_subsets(&pair);
            print!("{}", reports::subsets_json(&pair, &subsets));
        }
        Command::Matrix {
            nu,
            n1,
            mode,
            out,
            phase,
        } => {
            let pair = NumerologyPair::from_dimensionless(nu, n1)?;
            let mode = match mode {
                MatrixModeArg::Continuous => RhoMode::Continuous,
                MatrixModeArg::Discrete => RhoMode::Discrete,
            };
            let matrix = ini_matrix(&pair, mode)?;
            std::fs::write(&out, reports::matrix_magnitude_csv(&matrix))?;
            if phase {
                let phase_path = reports::matrix_phase_path(&out);
                std::fs::write(&phase_path, reports::matrix_phase_csv(&matrix))?;
            }
        }
        Command::Simulate {
            nu,
            n1,
            symbols,
            constellation,
            seed,
            out,
        } => {
            let pair = NumerologyPair::from_dimensionless(nu, n1)?;
            let report = run_experiment(&ExperimentConfig {
                pair,
                num_narrow_symbols: symbols,
                constellation: constellation.into(),
                seed,
                narrow_active: None,
            })?;
            std::fs::write(&out, reports::ini_report_json(&report))?;
        }
    }
    Ok(())
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Io(_) => 4,
        Error::Domain(_) | Error::ToleranceNotReached { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code_for(&error))
        }
    }
}
