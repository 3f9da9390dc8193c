//! `ledasig`: key generation, signing, verification, parameter and security
//! reports, and timing.
//!
//! Exit codes: 0 success (or signature accepted), 1 signature rejected,
//! 2 bad arguments, 3 I/O failure, 4 malformed input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ledasig", version, about = "LEDAsig signatures and security estimates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair and write <prefix>.pk and <prefix>.sk.
    Keygen {
        #[arg(long)]
        instance: String,
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        out_prefix: PathBuf,
    },
    /// Sign a message file.
    Sign {
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        message_file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify a signature; exits 0 on accept and 1 on reject.
    Verify {
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        message_file: PathBuf,
        #[arg(long)]
        sig: PathBuf,
    },
    /// Print parameters, derived dimensions and object sizes.
    Params {
        #[command(flatten)]
        select: Select,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Attack work factors and key lifetime.
    Estimate {
        #[command(flatten)]
        select: Select,
        /// Security level in bits; defaults to the instance category.
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Time key generation, signing and verification.
    Bench {
        #[arg(long)]
        instance: String,
        #[arg(long, default_value_t = 10)]
        iters: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct SeedArgs {
    /// Raw seed bytes.
    #[arg(long)]
    seed_file: Option<PathBuf>,
    /// Seed as hex.
    #[arg(long)]
    seed_hex: Option<String>,
    /// Draw the seed from the operating system.
    #[arg(long)]
    random: bool,
}

#[derive(Args)]
struct Select {
    /// Instance name (a3, a6, alpha3, b3, b6, beta3, c3, c6, gamma3).
    #[arg(long, conflicts_with_all = ["all", "params"])]
    instance: Option<String>,
    /// All nine instances.
    #[arg(long, conflicts_with = "params")]
    all: bool,
    /// Custom parameters: n0,r0,p,z,m_s,w,w_g,m_g,category.
    #[arg(long)]
    params: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Jsonl,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
enum CliError {
    Args(String),
    Io(String),
    Format(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Args(_) => 2,
            CliError::Io(_) => 3,
            CliError::Format(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Args(m) | CliError::Io(m) | CliError::Format(m) => f.write_str(m),
        }
    }
}

impl From<ledasig::Error> for CliError {
    fn from(e: ledasig::Error) -> Self {
        use ledasig::Error::*;
        match e {
            InvalidParams(_) | Domain(_) => CliError::Args(e.to_string()),
            _ => CliError::Format(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Keygen { instance, seed, out_prefix } => commands::keygen(&instance, &seed, &out_prefix),
        Command::Sign { sk, message_file, out } => commands::sign(&sk, &message_file, &out),
        Command::Verify { pk, message_file, sig } => commands::verify(&pk, &message_file, &sig),
        Command::Params { select, format } => commands::params(&select, format),
        Command::Estimate { select, lambda, format } => commands::estimate(&select, lambda, format),
        Command::Bench { instance, iters, format } => commands::bench(&instance, iters, format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
