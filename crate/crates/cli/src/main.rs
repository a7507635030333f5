mod args;
mod output;
mod run;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use output::{emit, CliError, EXIT_INVALID};

fn run(cli: &Cli) -> Result<i32, CliError> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::invalid("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::internal(format!("thread pool: {e}")))?;
    }
    let start = Instant::now();
    let report = match &cli.command {
        Command::Construct(c) => run::construct(c),
        Command::Verify(c) => run::verify(c),
        Command::Count(c) => run::count(c),
        Command::Search(c) => run::search(c),
        Command::Random(c) => run::random(c),
        Command::Charfunc(c) => run::charfunc(c),
        Command::Table(a) => run::table(a),
    }?;
    emit(report, cli.out.as_deref(), cli.json, &cli.command.name(), start.elapsed())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID as u8 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
