use clap::Parser;

use gadsim_cli::args::{Cli, Command};
use gadsim_cli::commands::{cmd_apply, cmd_simulate, cmd_sweep, cmd_verify};

fn main() {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout();
    let result = match &cli.command {
        Command::Apply(args) => cmd_apply(args, &mut stdout),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Verify(args) => cmd_verify(args, &mut stdout),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
