use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use swarmnav_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .is_err()
            {
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("swarmnav: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
