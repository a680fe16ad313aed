use std::process::ExitCode;

use doubleslit_cli::{parse_args, run, CliError, EXIT_VALIDATION};

fn main() -> ExitCode {
    let request = match parse_args(std::env::args_os()) {
        Ok(r) => r,
        Err(CliError::Usage(e)) => e.exit(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VALIDATION as u8);
        }
    };
    ExitCode::from(run(&request) as u8)
}
