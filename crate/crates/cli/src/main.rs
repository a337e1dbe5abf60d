mod args;
mod commands;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Status;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.out {
        Some(path) => File::create(path)
            .map_err(|e| anyhow::anyhow!("cannot create {}: {e}", path.display()))
            .and_then(|f| finish(cli, BufWriter::new(f))),
        None => finish(cli, BufWriter::new(io::stdout().lock())),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn finish<W: Write>(cli: Cli, mut out: W) -> anyhow::Result<Status> {
    let status = commands::run(cli, &mut out)?;
    out.flush()?;
    Ok(status)
}
