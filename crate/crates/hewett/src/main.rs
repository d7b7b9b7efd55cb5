use clap::{Parser, Subcommand, ValueEnum};
use hewett::commands::{self, SuiteOptions};
use hewett::report::exit;
use hewett::text;
use hewett_core::hewett::{DEFAULT_ALPHA_MAX, DEFAULT_M_MAX, DEFAULT_P_MAX};
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "hewett", version, about = "Metacyclic subgroups of cyclotomic crossed-product algebras")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = commands::DEFAULT_SEED, global = true)]
    seed: u64,
    /// Decimal digits for numerical positivity checks.
    #[arg(long, default_value_t = commands::DEFAULT_PRECISION, global = true, value_parser = clap::value_parser!(u32).range(10..=1000))]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the realizability condition and verdict.
    Classify {
        #[arg(long, default_value_t = DEFAULT_P_MAX)]
        p_max: u64,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        m_max: u32,
        #[arg(long, default_value_t = DEFAULT_ALPHA_MAX)]
        alpha_max: u32,
    },
    /// Build the algebra and verify the embedded group.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        /// Random samples per randomized suite.
        #[arg(long, default_value_t = commands::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Local invariants of the division algebra.
    Profile {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        alpha: u32,
    },
    /// Hermitian form invariants.
    Hermitian {
        #[arg(long)]
        p: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env = match cli.command {
        Command::Classify { p_max, m_max, alpha_max } => commands::classify(p_max, m_max, alpha_max),
        Command::Verify { p, m, alpha, samples } => {
            commands::verify(p, m, alpha, SuiteOptions { seed: cli.seed, precision: cli.precision, samples })
        }
        Command::Profile { p, m, alpha } => commands::profile(p, m, alpha),
        Command::Hermitian { p } => commands::hermitian(p),
    };
    let env = match env {
        Ok(env) => env,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::USAGE as u8);
        }
    };
    match cli.format {
        Format::Json => print!("{}", env.to_json()),
        Format::Text => print!("{}", text::render(&env)),
    }
    ExitCode::from(env.exit_code() as u8)
}
