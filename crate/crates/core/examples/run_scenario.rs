//! Runs a bundled scenario file and lists the artifacts it writes.
//!
//! `cargo run --example run_scenario -- scenarios/fig2b.toml out/`

use std::path::PathBuf;

use razavy_dw::scenario::{run_scenario, RunOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let file = args.next().map(PathBuf::from).unwrap_or_else(|| manifest.join("scenarios/fig2b.toml"));
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("razavy-dw"));
    match run_scenario(&file, &out, RunOptions::default()) {
        Ok((result, files)) => {
            for w in &result.warnings {
                eprintln!("warning: {w}");
            }
            for row in &result.averages {
                println!(
                    "{:<6} {:<12} <Gamma^2> = {:.6}  <C^2> = {:.6}",
                    row.method.name(),
                    row.source,
                    row.corr_sq,
                    row.conc_sq
                );
            }
            for f in files {
                println!("wrote {}", f.display());
            }
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    }
}
