use std::io::Write;
use std::process::ExitCode;

use gaussmanin::cli::{execute, DEFAULT_PREC_ENV};

fn main() -> ExitCode {
    let default_prec = std::env::var(DEFAULT_PREC_ENV).ok();
    let outcome = execute(std::env::args_os(), default_prec.as_deref());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
