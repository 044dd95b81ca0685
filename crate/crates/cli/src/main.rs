use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use holonomy_core::sampling::DEFAULT_SEED;
use holonomy_core::suite::SuiteKind;

mod commands;
mod report;

use commands::{Backend, UsageError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exact verification of G₂ and Spin(7) calibration identities.
#[derive(Parser, Debug)]
#[command(name = "holonomy", version)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Scalar backend for the identity checks.
    #[arg(long, global = true, value_enum, default_value_t = Backend::Rational)]
    backend: Backend,
    /// Include wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    G2,
    Spin7,
    Cy,
    Octonion,
}

impl From<Suite> for SuiteKind {
    fn from(s: Suite) -> Self {
        match s {
            Suite::G2 => SuiteKind::G2,
            Suite::Spin7 => SuiteKind::Spin7,
            Suite::Cy => SuiteKind::Cy,
            Suite::Octonion => SuiteKind::Octonion,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an identity suite on seeded random inputs.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Build an induced structure and check it.
    Induce {
        #[command(subcommand)]
        what: Induce,
    },
    /// Pair relations, mirror types and boundary values of the interpolating form.
    MirrorReport {
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, allow_hyphen_values = true)]
        xi_prime: String,
        /// Two vectors `u,v` spanning the plane that fixes the associative split.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Triality relations for an orthonormal 3-frame in ℝ⁸ and the label table.
    Triality {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Search for a signed permutation carrying one form to another.
    Equiv {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u64).range(1..=9))]
        dim: u64,
    },
    /// Compare golden files against computed values.
    Golden {
        /// Directory of `.forms` files; defaults to the bundled set.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Induce {
    /// Calabi–Yau data on ξ^⊥ ⊂ ℝ⁷ from φ₀.
    Cy {
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// G₂ form on γ^⊥ ⊂ ℝ⁸ from Ψ.
    G2 {
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn run(cli: &Cli) -> Result<report::Report, UsageError> {
    let b = cli.backend;
    match &cli.command {
        Command::Verify { suite, samples, seed } => commands::verify((*suite).into(), *samples as usize, *seed, b),
        Command::Induce { what: Induce::Cy { xi, samples, seed } } => {
            commands::induce_cy_cmd(xi, *samples as usize, *seed, b)
        }
        Command::Induce { what: Induce::G2 { gamma, samples, seed } } => {
            commands::induce_g2_cmd(gamma, *samples as usize, *seed, b)
        }
        Command::MirrorReport { xi, xi_prime, lambda } => commands::mirror_report(xi, xi_prime, lambda.as_deref(), b),
        Command::Triality { alpha, beta, gamma, seed } => commands::triality(alpha, beta, gamma, *seed, b),
        Command::Equiv { a, b: bb, dim } => commands::equiv(a, bb, *dim as usize),
        Command::Golden { dir } => commands::golden(dir.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(mut r) => {
            r.finish();
            if cli.timings {
                r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            let text = match cli.format {
                Format::Json => r.to_json() + "\n",
                Format::Text => r.to_text(),
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if r.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
