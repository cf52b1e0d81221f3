use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nahmlab::commands::{self, RunArgs};

#[derive(Parser)]
#[command(name = "nahmlab", version, about = "Nahm flows, spectral curves and symmetric-pair demos")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// JSON configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Directory for output artifacts.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Overrides the seed of the configuration.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the Nahm or baby Nahm flow.
    Evolve(Common),
    /// Spectral curves: conservation and reality.
    Spectral(Common),
    /// Shooting on a truncated half-line and orbit identification.
    Halfline(Common),
    /// Real nilpotent orbits of sl(2) and their normal forms.
    Vergne(Common),
    /// The invariant suite.
    Check(Common),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("NAHMLAB_LOG", "warn")).init();
    let cli = Cli::parse();
    let (run, c): (fn(&RunArgs) -> _, Common) = match cli.command {
        Command::Evolve(c) => (commands::evolve, c),
        Command::Spectral(c) => (commands::spectral, c),
        Command::Halfline(c) => (commands::halfline, c),
        Command::Vergne(c) => (commands::vergne, c),
        Command::Check(c) => (commands::check, c),
    };
    let args = RunArgs { config: c.config, out_dir: c.out_dir, seed: c.seed };
    let outcome = run(&args).unwrap_or_else(|e| {
        eprintln!("nahmlab: {e}");
        e.outcome()
    });
    ExitCode::from(outcome.code() as u8)
}
