//! `schensted` — curves, route simulations, and convergence verification
//! from the command line.
//!
//! Four subcommands: `curve` exports the limit curves, `simulate` writes raw
//! and scaled bumping routes, `verify` runs a seeded convergence report and
//! gates it on calibrated thresholds, `selftest` runs the fast invariant
//! suite. Exit codes are a stable contract: 0 success, 1 I/O error, 2 usage
//! error, 3 verification failure.

mod export;
mod selftest;
mod verify;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use schensted::curves::sample_curve;
use schensted::experiments::ReportConfig;
use schensted::plancherel::{sample_distinct_uniforms, SeededRng};
use schensted::tableau::insertion_tableau;

// ======================================================================
// Errors and exit codes
// ======================================================================

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or configuration (exit 2).
    Usage(String),
    /// Failed file or directory operation (exit 1).
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    /// A verification or self-test check failed (exit 3).
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Verification(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<schensted::Error> for CliError {
    fn from(e: schensted::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

// ======================================================================
// Arguments
// ======================================================================

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Parser)]
#[command(
    name = "schensted",
    version,
    about = "Bumping routes of row insertion: limit curves, simulations, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export the limit curve beta(alpha, .) for each alpha
    Curve(CurveArgs),
    /// Simulate insertions and export raw + scaled bumping routes
    Simulate(SimulateArgs),
    /// Run a seeded convergence report and check calibrated thresholds
    Verify(VerifyArgs),
    /// Fast self-checks: analytic identities, reference insertion, LIS oracle
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct CurveArgs {
    /// Insertion fractions in [0, 1); comma-separated or repeated
    #[arg(long = "alpha", value_delimiter = ',', required = true)]
    alphas: Vec<f64>,
    /// Grid points per curve
    #[arg(long, default_value_t = 200)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    /// Insertion fractions in [0, 1); comma-separated or repeated
    #[arg(long = "alpha", value_delimiter = ',', required = true)]
    alphas: Vec<f64>,
    /// Tableau sizes (entries drawn per trial: n - 1); comma-separated or repeated
    #[arg(long = "n", value_delimiter = ',', required = true)]
    ns: Vec<usize>,
    /// Trials per (n, alpha) cell
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Master seed; trial (cell i, index j) uses RNG stream i<<32|j
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Insertion fractions in [0, 1); comma-separated or repeated
    #[arg(long = "alpha", value_delimiter = ',', default_values_t = vec![0.3, 0.5, 0.7])]
    alphas: Vec<f64>,
    /// Tableau sizes; comma-separated or repeated
    #[arg(long = "n", value_delimiter = ',', default_values_t = vec![1_000, 10_000, 100_000])]
    ns: Vec<usize>,
    /// Trials per (n, alpha) cell
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Master seed (required: verification must be reproducible)
    #[arg(long)]
    seed: u64,
    /// Exceedance thresholds; comma-separated or repeated
    #[arg(long = "epsilon", value_delimiter = ',', default_values_t = vec![0.05, 0.1, 0.2])]
    epsilons: Vec<f64>,
    /// Curve grid used for the sup-distance interpolation
    #[arg(long, default_value_t = schensted::experiments::DEFAULT_REPORT_GRID)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output directory for the report
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Fault-injection hook: scale every curve by this factor before
    /// verification. Exists to prove the checks catch a wrong curve.
    #[arg(long, hide = true)]
    inject_beta_scale: Option<f64>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Exhaust all permutations up to this size in the LIS oracle (1..=7)
    #[arg(long, default_value_t = 6)]
    perm_size: usize,
    /// Fault-injection hook: negate the limit shape inside the identity
    /// checks. Exists to prove the self-test catches a broken shape.
    #[arg(long, hide = true)]
    inject_omega_sign_flip: bool,
}

// ======================================================================
// Resolved configuration
// ======================================================================

/// A subcommand's arguments after validation, with defaults filled in.
/// Everything any subcommand needs lives here; unused fields keep their
/// defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub alphas: Vec<f64>,
    pub ns: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub epsilons: Vec<f64>,
    pub grid: usize,
    pub format: Format,
    pub out: PathBuf,
}

impl RunConfig {
    fn validate(&self) -> Result<(), CliError> {
        if self.alphas.is_empty() {
            return Err(CliError::Usage("at least one --alpha is required".into()));
        }
        for &a in &self.alphas {
            if !a.is_finite() || !(0.0..1.0).contains(&a) {
                return Err(CliError::Usage(format!("--alpha {a} is outside [0, 1)")));
            }
        }
        for &n in &self.ns {
            if n < 2 {
                return Err(CliError::Usage(format!(
                    "--n {n} is too small (need n >= 2)"
                )));
            }
        }
        if self.trials == 0 {
            return Err(CliError::Usage("--trials must be at least 1".into()));
        }
        if self.grid < 2 {
            return Err(CliError::Usage("--grid must be at least 2".into()));
        }
        for &e in &self.epsilons {
            if !e.is_finite() || e < 0.0 {
                return Err(CliError::Usage(format!(
                    "--epsilon {e} must be non-negative"
                )));
            }
        }
        Ok(())
    }
}

// ======================================================================
// Subcommands
// ======================================================================

fn cmd_curve(args: CurveArgs) -> Result<(), CliError> {
    let cfg = RunConfig {
        alphas: args.alphas,
        ns: vec![],
        trials: 1,
        seed: 0,
        epsilons: vec![],
        grid: args.grid,
        format: args.format,
        out: args.out,
    };
    cfg.validate()?;
    for &alpha in &cfg.alphas {
        let curve = sample_curve(alpha, cfg.grid)?;
        let contents = match cfg.format {
            Format::Csv => export::curve_csv(&curve),
            Format::Json => export::curve_json(&curve),
        };
        let path = cfg
            .out
            .join(format!("curve_alpha{alpha}.{}", cfg.format.extension()));
        export::write_text(&path, &contents)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let cfg = RunConfig {
        alphas: args.alphas,
        ns: args.ns,
        trials: args.trials,
        seed: args.seed,
        epsilons: vec![],
        grid: 2,
        format: args.format,
        out: args.out,
    };
    cfg.validate()?;
    if cfg.ns.is_empty() {
        return Err(CliError::Usage("at least one --n is required".into()));
    }
    for (i, &n) in cfg.ns.iter().enumerate() {
        for (j, &alpha) in cfg.alphas.iter().enumerate() {
            let cell = (i * cfg.alphas.len() + j) as u64;
            for trial in 0..cfg.trials {
                let mut rng = SeededRng::with_stream(cfg.seed, (cell << 32) | trial as u64);
                let entries = sample_distinct_uniforms(n - 1, &mut rng, Some(alpha));
                let mut tableau = insertion_tableau(&entries)?;
                let route = tableau.insert(alpha)?;
                let contents = match cfg.format {
                    Format::Csv => export::route_csv(n, &route),
                    Format::Json => export::route_json(n, alpha, cfg.seed, rng.stream(), &route),
                };
                let path = cfg.out.join(format!(
                    "route_n{n}_alpha{alpha}_trial{trial}.{}",
                    cfg.format.extension()
                ));
                export::write_text(&path, &contents)?;
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let inject = args.inject_beta_scale;
    let cfg = RunConfig {
        alphas: args.alphas,
        ns: args.ns,
        trials: args.trials,
        seed: args.seed,
        epsilons: args.epsilons,
        grid: args.grid,
        format: args.format,
        out: args.out,
    };
    cfg.validate()?;
    if cfg.ns.is_empty() {
        return Err(CliError::Usage("at least one --n is required".into()));
    }
    let report_cfg = ReportConfig {
        n_values: cfg.ns.clone(),
        alphas: cfg.alphas.clone(),
        trials: cfg.trials,
        epsilons: cfg.epsilons.clone(),
        master_seed: cfg.seed,
        curve_grid: cfg.grid,
    };
    let report = match inject {
        None => schensted::experiments::convergence_report(&report_cfg)?,
        Some(factor) => {
            schensted::experiments::convergence_report_injected(&report_cfg, &|curve| {
                curve.scale_beta(factor)
            })?
        }
    };
    let contents = match cfg.format {
        Format::Csv => export::report_csv(&report),
        Format::Json => export::report_json(&report),
    };
    let path = cfg.out.join(format!("report.{}", cfg.format.extension()));
    export::write_text(&path, &contents)?;
    println!("wrote {}", path.display());

    let checks = verify::evaluate_report(&report);
    let mut failed = Vec::new();
    for check in &checks {
        println!(
            "{} {} — {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
        if !check.passed {
            failed.push(check.name.clone());
        }
    }
    println!(
        "verification: {} checks, {} failed",
        checks.len(),
        failed.len()
    );
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

fn cmd_selftest(args: SelftestArgs) -> Result<(), CliError> {
    if !(1..=7).contains(&args.perm_size) {
        return Err(CliError::Usage(
            "--perm-size must be between 1 and 7".into(),
        ));
    }
    selftest::run(args.perm_size, args.inject_omega_sign_flip)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Curve(args) => cmd_curve(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Selftest(args) => cmd_selftest(args),
    }
}

fn main() -> ExitCode {
    // Parse manually so the usage exit code stays 2 whatever clap does.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
