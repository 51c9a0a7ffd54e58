mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kummer_core::verify::{Options, Suite};

use commands::{CliError, MapKind};

/// Exact computations on the Kummer surface of a genus 2 curve.
#[derive(Debug, Parser)]
#[command(name = "kummer", version)]
struct Cli {
    /// Curve description file.
    #[arg(long, global = true)]
    curve: Option<String>,
    /// Override the base field of the curve file (QQ or GF(p)).
    #[arg(long, global = true)]
    field: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The Kummer quartic, its nodes and tropes.
    Kummer,
    /// Evaluate one of the maps at a point or divisor.
    Map {
        #[arg(long, value_enum)]
        which: MapKind,
        /// Projective point, coordinates separated by ':' or ','.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Divisor pair as x,y,u,v or x,y,u,v,twist.
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        /// Index of the trope-plane correlation used by kappa_star.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=6))]
        index: u8,
    },
    /// Run verification suites.
    Verify {
        /// all, kappa, lines, diagrams, twists or autos.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Quadratic twists of the Kummer model.
    Twist {
        /// Coefficients c0,..,c5 of the twisting class mod F.
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        /// Coefficients of a witness beta; the class is beta^2.
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        /// Search bound for points (|coordinate| <= bound over QQ).
        #[arg(long, default_value_t = 1)]
        bound: u64,
    },
    /// Linear automorphisms and the non-commuting involution report.
    Autos,
}

fn run(cli: &Cli) -> Result<report::Report, CliError> {
    let path = cli.curve.as_deref().ok_or_else(|| CliError::Usage("--curve <file> is required".into()))?;
    let curve = commands::load_curve(path, cli.field.as_deref())?;
    match &cli.command {
        Command::Kummer => commands::cmd_kummer(&curve),
        Command::Map { which, point, divisor, index } => {
            commands::cmd_map(&curve, *which, point.as_deref(), divisor.as_deref(), usize::from(*index))
        }
        Command::Verify { suite, samples, seed } => {
            let suite = match suite.as_str() {
                "all" => None,
                s => Some(s.parse::<Suite>().map_err(CliError::Usage)?),
            };
            commands::cmd_verify(&curve, suite, Options { samples: *samples, seed: *seed })
        }
        Command::Twist { xi, beta, bound } => commands::cmd_twist(&curve, xi.as_deref(), beta.as_deref(), *bound),
        Command::Autos => commands::cmd_autos(&curve),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(mut r) => {
            r.finish();
            print!("{}", r.render(cli.json));
            ExitCode::from(u8::from(r.failed()))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
