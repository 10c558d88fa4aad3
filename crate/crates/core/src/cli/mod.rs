//! The `semishor` command line.
//!
//! Exit codes: 0 success, 1 invalid arguments, 2 verification failure,
//! 3 no factor after `--max-trials`.

pub mod checks;
pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use checks::{Check, Report};
pub use commands::{cmd_dist, cmd_factor, cmd_phase, FactorReport};
pub use config::{Format, Mode, OracleSuite, RunConfig, Suite};

use crate::error::Error;
use crate::quantum::KMode;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_FACTOR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "semishor", version, about = "Exact and semiclassical Shor period finding")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the ĉ distribution for one instance.
    Dist(DistArgs),
    /// Sample measurements until a factor of N is found.
    Factor(FactorArgs),
    /// Run an invariant suite.
    Verify(VerifyArgs),
    /// Write a precession trajectory in the coherent-state phase space.
    Phase(PhaseArgs),
    /// Compare closed forms against brute-force and quadrature oracles.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Number to factor.
    #[arg(long = "N")]
    pub n: u64,
    /// Base coprime to N; drawn from the seeded generator when absent.
    #[arg(long)]
    pub x: Option<u64>,
    /// Register width; defaults to the smallest l with 2^l ≥ N².
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long, value_enum, default_value_t = Mode::Quantum)]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Residue class k, or "marginal" to sum over all classes.
    #[arg(long, value_parser = config::parse_k, default_value = "0")]
    pub k: KMode,
    /// Emit the envelope h̃(ẑ, l)·P instead of the selected mode.
    #[arg(long, allow_negative_numbers = true)]
    pub zhat: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long = "max-trials", default_value_t = 100)]
    pub max_trials: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Override every check's tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum, default_value_t = OracleSuite::All)]
    pub suite: OracleSuite,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PhaseArgs {
    /// Initial λ as `re`, `re,im` or `re+imi`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda0: String,
    #[arg(long, allow_negative_numbers = true)]
    pub dphi: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

fn config_from(instance: &InstanceArgs) -> RunConfig {
    RunConfig {
        n: instance.n,
        x: instance.x,
        l: instance.l,
        k: KMode::Fixed(0),
        mode: instance.mode,
        seed: instance.seed,
        max_trials: 100,
        out_path: instance.out.clone(),
        format: instance.format,
        zhat: None,
    }
}

fn exit_for(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) | Error::NotCoprime { .. } | Error::ResourceLimit(_) => EXIT_INVALID,
        Error::UndefinedRatio(_) => EXIT_VERIFY,
    }
}

fn report_error(stderr: &mut dyn Write, err: &Error) -> i32 {
    let _ = writeln!(stderr, "error: {err}");
    exit_for(err)
}

fn emit(out: Option<&PathBuf>, stdout: &mut dyn Write, stderr: &mut dyn Write, bytes: &[u8]) -> i32 {
    let result = match out {
        Some(path) => std::fs::write(path, bytes),
        None => stdout.write_all(bytes),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot write output: {e}");
            EXIT_INVALID
        }
    }
}

fn emit_report(
    report: Report,
    out: Option<&PathBuf>,
    format: Format,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let bytes = match format {
        Format::Csv => {
            let mut text = report.lines().join("\n");
            text.push('\n');
            text.into_bytes()
        }
        Format::Json => output::json_bytes(&report),
    };
    if out.is_some() {
        for line in report.lines() {
            let _ = writeln!(stdout, "{line}");
        }
    }
    let code = emit(out, stdout, stderr, &bytes);
    if code != EXIT_OK {
        return code;
    }
    if report.passed {
        EXIT_OK
    } else {
        EXIT_VERIFY
    }
}

/// Parses `args` and runs the selected command, returning the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    match cli.command {
        Command::Dist(args) => {
            let mut config = config_from(&args.instance);
            config.k = args.k;
            config.zhat = args.zhat;
            match cmd_dist(&config) {
                Ok(table) => {
                    let bytes = match config.format {
                        Format::Csv => output::dist_csv(&table),
                        Format::Json => Ok(output::json_bytes(&table)),
                    };
                    match bytes {
                        Ok(bytes) => emit(config.out_path.as_ref(), stdout, stderr, &bytes),
                        Err(e) => report_error(stderr, &e),
                    }
                }
                Err(e) => report_error(stderr, &e),
            }
        }
        Command::Factor(args) => {
            let mut config = config_from(&args.instance);
            config.max_trials = args.max_trials;
            match cmd_factor(&config) {
                Ok(report) => {
                    let bytes = match config.format {
                        Format::Csv => output::factor_csv(&report),
                        Format::Json => Ok(output::json_bytes(&report)),
                    };
                    let code = match bytes {
                        Ok(bytes) => emit(config.out_path.as_ref(), stdout, stderr, &bytes),
                        Err(e) => report_error(stderr, &e),
                    };
                    if code != EXIT_OK {
                        code
                    } else if report.success {
                        EXIT_OK
                    } else {
                        let _ = writeln!(
                            stderr,
                            "no factor of {} after {} trials",
                            report.N, report.trials
                        );
                        EXIT_FACTOR
                    }
                }
                Err(e) => report_error(stderr, &e),
            }
        }
        Command::Verify(args) => {
            let checks = checks::run_suite(args.suite);
            let report = match args.tol {
                Some(tol) => Report::with_tolerance(checks, tol),
                None => Report::new(checks),
            };
            emit_report(report, args.out.as_ref(), args.format, stdout, stderr)
        }
        Command::Oracle(args) => {
            let checks = checks::run_oracle(args.suite);
            let report = match args.tol {
                Some(tol) => Report::with_tolerance(checks, tol),
                None => Report::new(checks),
            };
            emit_report(report, args.out.as_ref(), args.format, stdout, stderr)
        }
        Command::Phase(args) => {
            let lambda0 = match config::parse_complex(&args.lambda0) {
                Ok(l) => l,
                Err(e) => return report_error(stderr, &e),
            };
            match cmd_phase(lambda0, args.dphi, args.steps) {
                Ok(traj) => {
                    let bytes = match args.format {
                        Format::Csv => output::phase_csv(&traj),
                        Format::Json => Ok(output::phase_json(lambda0, args.dphi, &traj)),
                    };
                    match bytes {
                        Ok(bytes) => emit(args.out.as_ref(), stdout, stderr, &bytes),
                        Err(e) => report_error(stderr, &e),
                    }
                }
                Err(e) => report_error(stderr, &e),
            }
        }
    }
}
