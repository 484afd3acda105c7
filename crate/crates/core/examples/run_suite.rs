//! Runs a verification suite programmatically and prints the text report.
//!
//! `cargo run --example run_suite -- <suite> <seed> <count>`

use spantrace::cli::generate::GenParams;
use spantrace::cli::suites::run_suite;

fn main() -> spantrace::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let suite = args.first().map_or("oracle", String::as_str);
    let seed = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let count = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(10);
    let report = run_suite(suite, seed, count, &GenParams::default())?;
    print!("{}", report.to_text());
    Ok(())
}
