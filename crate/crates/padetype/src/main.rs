use std::process::ExitCode;

use clap::Parser;
use padetype::{run, Command, Flags};

/// Padé-type rational and barycentric interpolation.
#[derive(Parser)]
#[command(name = "padetype", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, &cli.flags) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("padetype: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
