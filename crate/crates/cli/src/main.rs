use std::process::ExitCode;

use clap::Parser;
use naw_cli::args::Cli;
use naw_cli::commands::run;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("naw: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
