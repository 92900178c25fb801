//! `sdmbc`: command-line front end for the capacity-distortion toolkit.
//!
//! Exit codes: 0 success or property holds, 1 property violated, 2 usage or
//! input error, 3 I/O error. `SDMBC_THREADS` sets the worker thread count.

use std::process::ExitCode;

use clap::Parser;
use sdmbc_cli::{args, run};

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    if let Some(threads) = std::env::var("SDMBC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // a pool may already exist when RAYON_NUM_THREADS is also set
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(failure.code())
        }
    }
}
