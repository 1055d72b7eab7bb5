use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use mlcss_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut diag = stderr.lock();
    let result = execute(cli.command, &mut out, &mut diag);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(diag, "mlcss: {e}");
            ExitCode::from(&e)
        }
    }
}
