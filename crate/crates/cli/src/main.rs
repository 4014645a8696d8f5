mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Status;

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("GAUDIN_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("GAUDIN_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("GAUDIN_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Status::Usage as u8) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(Status::Usage as u8);
    }
    let res = match &cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Verify(a) => commands::verify(a),
        Command::Average(a) => commands::average(a),
        Command::Chars(a) => commands::chars(a),
        Command::Roundtrip(a) => commands::roundtrip(a),
    };
    let status = res.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        commands::status_of(&e)
    });
    ExitCode::from(status as u8)
}
