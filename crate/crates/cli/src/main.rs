use std::io::Write;
use std::process::ExitCode;

use msym_cli::{run, CliError};

fn main() -> ExitCode {
    match run(std::env::args_os()) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(outcome.rendered.as_bytes());
            let _ = out.flush();
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(CliError::Display(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("msym: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
