use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lsd_cli::{run, ExperimentConfig, RunError};

/// Run one experiment described by a config file.
#[derive(Debug, Parser)]
#[command(name = "lsd", version)]
struct Args {
    /// Path to the INI-style experiment config.
    config: PathBuf,
    /// Master seed, overriding `seed` in the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory, overriding `output` in the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; results do not depend on this.
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lsd: {e}");
            ExitCode::FAILURE
        }
    }
}

fn execute(args: &Args) -> Result<(), RunError> {
    let text = std::fs::read_to_string(&args.config).map_err(|source| RunError::Io {
        path: args.config.clone(),
        source,
    })?;
    let mut config = ExperimentConfig::parse(&text)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(out) = &args.out {
        config.output = out.clone();
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = args.threads {
        if k == 0 {
            return Err(lsd_cli::ConfigError::new("--threads must be at least 1").into());
        }
        pool = pool.num_threads(k);
    }
    let pool = pool
        .build()
        .map_err(|e| lsd_cli::ConfigError::new(format!("cannot start thread pool: {e}")))?;
    let outcome = pool.install(|| run(&config))?;
    println!("{}", outcome.csv_path.display());
    println!("{}", outcome.json_path.display());
    Ok(())
}
