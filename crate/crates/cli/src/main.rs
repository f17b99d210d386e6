//! `gauss-tps`: analyze two-mode Gaussian states and produce plot data.
//!
//! Exit codes: 0 success, 1 other failure, 2 usage error, 3 unparsable input,
//! 4 state not physical, 5 search budget exhausted, 6 I/O failure.

mod commands;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gauss_tps::{SampleMode, SearchConfig, SweepAxis};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    NotPhysical(String),
    Budget(String),
    Io(String),
    Other(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Other(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::NotPhysical(_) => 4,
            CliError::Budget(_) => 5,
            CliError::Io(_) => 6,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Parse(m)
            | CliError::NotPhysical(m)
            | CliError::Budget(m)
            | CliError::Io(m)
            | CliError::Other(m) => m,
        }
    }
}

impl From<gauss_tps::Error> for CliError {
    fn from(e: gauss_tps::Error) -> Self {
        use gauss_tps::Error as E;
        let msg = e.to_string();
        match e {
            E::NotPhysical | E::ComplexSpectrum { .. } | E::SingularCovariance { .. } => {
                CliError::NotPhysical(msg)
            }
            E::BudgetExhausted(_) => CliError::Budget(msg),
            E::InvalidParameter(_) | E::NonPositiveSqueeze(_) => CliError::Usage(msg),
            E::NonFiniteEntry { .. } | E::AsymmetricInput { .. } => CliError::Parse(msg),
            E::SamplingStalled(_) => CliError::Other(msg),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "gauss-tps",
    version,
    about = "Entanglement of two-mode Gaussian states across mode redefinitions"
)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Tolerance for physicality and PPT tests
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Search grid points along theta, phi, phi1, phi2
    #[arg(long, global = true, value_delimiter = ',', default_value = "9,8,8,8")]
    pub grid: Vec<usize>,
    /// Objective evaluations allowed per extremum
    #[arg(long, global = true, default_value_t = 20_000)]
    pub budget: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn search(&self) -> Result<SearchConfig, CliError> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(CliError::Usage(format!(
                "--tol must be positive, got {}",
                self.tol
            )));
        }
        let grid: [usize; 4] = self.grid.as_slice().try_into().map_err(|_| {
            CliError::Usage(format!("--grid needs 4 counts, got {}", self.grid.len()))
        })?;
        if grid.contains(&0) {
            return Err(CliError::Usage("--grid counts must be positive".into()));
        }
        let config = SearchConfig {
            grid,
            budget: self.budget,
            seed: self.seed,
            ..SearchConfig::default()
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the two-mode squeezed vacuum with squeeze parameter R
    Tms {
        #[arg(allow_hyphen_values = true)]
        r: f64,
        #[arg(long)]
        label: Option<String>,
    },
    /// Report spectra, negativity, standard form and extremal entanglement of a state
    Analyze {
        input: PathBuf,
        /// Print the JSON report instead of text
        #[arg(long)]
        json: bool,
        /// Threshold on E+ (bits) for absolute separability
        #[arg(long, default_value_t = gauss_tps::ABS_SEPARABILITY_TOL)]
        abs_tol: f64,
    },
    /// Log-negativity along one chart angle
    Sweep {
        input: PathBuf,
        #[arg(long, default_value = "theta", value_parser = parse_axis)]
        axis: SweepAxis,
        #[arg(long, default_value_t = 181)]
        steps: usize,
        /// theta,phi,phi1,phi2; the swept entry is ignored
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "0,0,0,0"
        )]
        fixed: Vec<f64>,
        /// lo,hi in radians; [0, pi/2] for theta, [0, 2 pi] for phases
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        range: Option<Vec<f64>>,
    },
    /// Log-negativity over local squeeze eta and mixing angle theta for a squeezed vacuum
    Surface {
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        /// eta_min,eta_max
        #[arg(long, value_delimiter = ',', default_value = "0.5,2")]
        eta: Vec<f64>,
        #[arg(long, default_value_t = 31)]
        eta_steps: usize,
        #[arg(long, default_value_t = 91)]
        theta_steps: usize,
        /// phi,phi1,phi2 held fixed
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "0,0,0"
        )]
        phases: Vec<f64>,
    },
    /// Fraction of random physical states that are absolutely separable
    Census {
        #[arg(long, default_value = "standard", value_parser = parse_mode)]
        mode: SampleMode,
        /// Physical states to classify
        #[arg(long, default_value_t = 7746)]
        n: usize,
        /// Range of diagonal entries
        #[arg(long, value_delimiter = ',', default_value = "0.5,1.5")]
        diag: Vec<f64>,
        /// Range of off-diagonal entries
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "-1,1"
        )]
        offdiag: Vec<f64>,
        /// In generic mode, dress standard-form draws with random local symplectics
        #[arg(long = "generic-via-T")]
        generic_via_t: bool,
        #[arg(long, default_value_t = gauss_tps::ABS_SEPARABILITY_TOL)]
        abs_tol: f64,
    },
}

fn parse_axis(s: &str) -> Result<SweepAxis, String> {
    s.parse().map_err(|e: gauss_tps::Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<SampleMode, String> {
    s.parse().map_err(|e: gauss_tps::Error| e.to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let run = &cli.run;
    match cli.command {
        Command::Tms { r, label } => commands::tms(run, r, label),
        Command::Analyze {
            input,
            json,
            abs_tol,
        } => commands::analyze(run, &input, json, abs_tol),
        Command::Sweep {
            input,
            axis,
            steps,
            fixed,
            range,
        } => commands::sweep(run, &input, axis, steps, &fixed, range.as_deref()),
        Command::Surface {
            r,
            eta,
            eta_steps,
            theta_steps,
            phases,
        } => commands::surface(run, r, &eta, eta_steps, theta_steps, &phases),
        Command::Census {
            mode,
            n,
            diag,
            offdiag,
            generic_via_t,
            abs_tol,
        } => {
            let mode = match (mode, generic_via_t) {
                (SampleMode::Generic, true) => SampleMode::GenericViaT,
                (_, true) => {
                    return Err(CliError::Usage(
                        "--generic-via-T requires --mode generic".into(),
                    ))
                }
                (m, false) => m,
            };
            commands::census(run, mode, n, &diag, &offdiag, abs_tol)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
