//! Run an experiment described by a TOML config.
//!
//! Exit status: 0 when no verdict failed, 3 when one did, 1 on errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gafzeros::experiment::{load_config, run, Verdict};

#[derive(Parser)]
#[command(version, about = "Simulate GAF zeros and determinantal processes from a TOML config")]
struct Args {
    /// Experiment config (TOML)
    #[arg(long)]
    config: PathBuf,
    /// Root seed, overriding the config
    #[arg(long)]
    seed: Option<u64>,
    /// Number of shards, overriding the config
    #[arg(long)]
    shards: Option<usize>,
    /// Output directory, overriding the config
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = load_config(&args.config).and_then(|mut cfg| {
        if let Some(s) = args.seed {
            cfg.seed = s;
        }
        if let Some(k) = args.shards {
            cfg.shards = k;
        }
        if let Some(o) = args.out {
            cfg.out = Some(o);
        }
        let report = run(&cfg)?;
        println!("{}", report.to_json()?);
        Ok(report)
    });
    match result {
        Ok(r) if r.verdict == Verdict::Fail => ExitCode::from(3),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
