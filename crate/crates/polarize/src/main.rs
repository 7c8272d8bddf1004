//! Command-line front end: scenario verification, identity-file checking
//! and Jacobian corroboration runs.
//!
//! Exit status: 0 when every expected verdict matched, 1 on any mismatch
//! or refutation-consistency failure, 2 on usage, validation or parse
//! errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polarize::parse::parse_integer_polynomial;
use polarize::scenario::{jacobian_check, run_scenario, verify_file, RunOptions, ScenarioName};
use polarize::{Report, RingKind};

#[derive(Parser)]
#[command(
    name = "polarize",
    version,
    about = "Exact divisor-class pullback calculus and genus-2 Jacobian workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Built-in scenario: deg5, deg6, deg6-alpha or zeta5.
    #[arg(long, conflicts_with = "file")]
    scenario: Option<String>,
    /// Identity file: one identity per line, '#' comments, optional
    /// 'ring: <kind>' header.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Ring for --file when the file carries no header: gaussian,
    /// sixthroot or fifthroot.
    #[arg(long)]
    ring: Option<String>,
    /// Prime override for the Jacobian corroboration of deg5/zeta5.
    #[arg(long)]
    prime: Option<u64>,
    /// Seed for the deterministic point sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct JacobianArgs {
    /// Curve polynomial f(x) of y² = f(x), e.g. "x^5-x".
    #[arg(long)]
    curve: String,
    #[arg(long)]
    prime: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Verify divisor-class identities: a built-in scenario or a file.
    Verify(VerifyArgs),
    /// Run the point-level Jacobian suite on a curve.
    Jacobian(JacobianArgs),
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    if report.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn run_verify(args: VerifyArgs) -> ExitCode {
    match (&args.scenario, &args.file) {
        (Some(name), None) => {
            let name: ScenarioName = match name.parse() {
                Ok(n) => n,
                Err(e) => return usage_error(e),
            };
            let options = RunOptions {
                prime: args.prime,
                seed: args.seed,
            };
            match run_scenario(name, &options) {
                Ok(report) => emit(&report, args.format),
                Err(e) => usage_error(e),
            }
        }
        (None, Some(path)) => {
            let ring = match &args.ring {
                Some(name) => match RingKind::parse_name(name) {
                    Some(kind) => Some(kind),
                    None => {
                        return usage_error(format!(
                            "unknown ring '{name}' (expected gaussian, sixthroot or fifthroot)"
                        ))
                    }
                },
                None => None,
            };
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return usage_error(format!("{}: {e}", path.display())),
            };
            match verify_file(&text, ring, args.seed) {
                Ok(report) => emit(&report, args.format),
                Err(e) => usage_error(e),
            }
        }
        _ => usage_error("pass exactly one of --scenario or --file"),
    }
}

fn run_jacobian(args: JacobianArgs) -> ExitCode {
    let coeffs = match parse_integer_polynomial(&args.curve, 'x') {
        Ok(c) => c,
        Err(e) => return usage_error(format!("--curve: {e}")),
    };
    match jacobian_check(&coeffs, args.prime, args.seed) {
        Ok(report) => emit(&report, args.format),
        Err(e) => usage_error(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => run_verify(args),
        Command::Jacobian(args) => run_jacobian(args),
    }
}
