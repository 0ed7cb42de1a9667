use std::process::ExitCode;

use clap::Parser;
use pwkit::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("PWKIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // ignore a pool that is already initialized
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.summary());
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
