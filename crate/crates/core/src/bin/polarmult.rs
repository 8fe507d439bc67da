use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use polarmult::cli::{run, Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match (&cli.input, cli.command) {
        (_, Command::Selftest) => None,
        (Some(path), _) => match std::fs::read_to_string(path) {
            Ok(s) => Some(s),
            Err(e) => {
                eprintln!("cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        (None, _) => {
            let mut s = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut s) {
                eprintln!("cannot read stdin: {e}");
                return ExitCode::from(2);
            }
            Some(s)
        }
    };
    let (code, text) = run(cli.command, input.as_deref(), &cli.flags());
    print!("{text}");
    ExitCode::from(code as u8)
}
