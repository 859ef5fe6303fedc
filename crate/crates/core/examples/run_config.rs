//! Run an experiment from a TOML config and write its outputs.
//!
//! `cargo run --release --example run_config -- examples/configs/intensity.toml target/out`

use std::path::PathBuf;

use gafzeros::experiment::{load_config, run};

fn main() -> gafzeros::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = PathBuf::from(args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/sample.toml").into()));
    let out = PathBuf::from(args.next().unwrap_or_else(|| std::env::temp_dir().join("gafzeros-example").display().to_string()));
    let mut cfg = load_config(&path)?;
    cfg.out = Some(out.clone());
    let report = run(&cfg)?;
    println!("{} -> verdict {:?} in {:.2}s, outputs in {}", path.display(), report.verdict, report.wall_clock_seconds, out.display());
    for m in &report.metrics {
        println!("  {:<24} {:>12.6} {}", m.name, m.estimate, m.tolerance.as_deref().unwrap_or(""));
    }
    Ok(())
}
