//! `vvjack`: command-line front end.

/// `println!` that ends the process quietly when stdout is a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout().lock(), $($t)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

mod commands;
mod wave;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "vvjack", version, about = "Vector-valued Jack polynomials: exact Yang-Baxter graph engine and torus wavefunctions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the reverse standard Young tableaux of a shape in canonical order.
    Tableaux(commands::TableauxArgs),
    /// Nonsymmetric Jack polynomial ζ_{α,T} with its spectral vector.
    Nsjp(commands::NsjpArgs),
    /// Symmetric Jack polynomial J_{λ,T_S} with norm and eigenvalue.
    Jack(commands::JackArgs),
    /// Squared norm of ζ_{α,T}, closed form and edge recursion.
    Norm(commands::NormArgs),
    /// Number of symmetric Jack polynomials per degree.
    Count(commands::CountArgs),
    /// Run the exact invariant suites; exits 4 on any failure.
    Verify(commands::VerifyArgs),
    /// Numerical base state and wavefunctions on the torus.
    Wave {
        #[command(subcommand)]
        command: wave::WaveCommand,
    },
}

/// Shape, coupling and pole handling shared by the exact commands.
#[derive(Args, Debug, Clone)]
pub struct ShapeKappa {
    /// Partition τ, comma separated, e.g. 2,1.
    #[arg(long)]
    pub tau: String,
    /// Coupling κ as a rational "p/q".
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: String,
    /// Accept |κ| ≥ 1/h_τ after a pole audit up to the requested degree.
    #[arg(long)]
    pub force_kappa: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Json,
    Csv,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Kappa(String),
    Verify(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Kappa(_) => 3,
            CliError::Verify(_) => 4,
            CliError::Internal(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Kappa(_) => "inadmissible_kappa",
            CliError::Verify(_) => "verification_failed",
            CliError::Internal(_) => "internal",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Kappa(m) | CliError::Verify(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<vvjack::Error> for CliError {
    fn from(e: vvjack::Error) -> Self {
        use vvjack::Error as E;
        let msg = e.to_string();
        match e {
            E::InadmissibleKappa(_) => CliError::Kappa(msg),
            E::Integration(_) | E::Series(_) | E::NotRepresentable(_) | E::ContextMismatch => CliError::Internal(msg),
            _ => CliError::Usage(msg),
        }
    }
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    message: &'a str,
    exit_code: u8,
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Pretty JSON followed by a newline.
pub fn emit_json<T: Serialize>(v: &T) -> CliResult<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| CliError::Internal(e.to_string()))?;
    out!("{s}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::from(if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 });
            }
            return fail(CliError::Usage(e.to_string().trim().to_string()));
        }
    };
    let res = match cli.command {
        Command::Tableaux(a) => commands::tableaux(&a),
        Command::Nsjp(a) => commands::nsjp(&a),
        Command::Jack(a) => commands::jack(&a),
        Command::Norm(a) => commands::norm(&a),
        Command::Count(a) => commands::count(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Wave { command } => wave::run(&command),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    let j = ErrorJson { error: e.kind(), message: e.message(), exit_code: e.code() };
    eprintln!("{}", serde_json::to_string(&j).unwrap_or_else(|_| "{\"error\":\"internal\"}".into()));
    ExitCode::from(e.code())
}
