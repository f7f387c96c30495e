use std::io;
use std::process::ExitCode;

use clap::Parser;
use regseq_cli::{run, Cli, Usage, EXIT_USAGE};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let stdout = io::stdout().lock();
    let mut stderr = io::stderr();
    match run(cli, stdout, &mut stderr) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if e.downcast_ref::<Usage>().is_some() {
                eprintln!("error: {e}");
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(EXIT_USAGE)
        }
    }
}
