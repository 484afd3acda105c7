//! Prints a seeded random instance file.
//!
//! `cargo run --example generate_instance -- <seed> [modulus] [lv|endo|basechange]`

use spantrace::cli::generate::{generate, generate_endo, GenParams};

fn main() -> spantrace::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let seed = args.first().and_then(|s| s.parse().ok()).unwrap_or(42);
    let modulus = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let p = GenParams::default();
    let file = match args.get(2).map(String::as_str).unwrap_or("lv") {
        "endo" => generate_endo(seed, &p, modulus)?,
        "basechange" => generate(seed, &p, modulus, true)?,
        _ => generate(seed, &p, modulus, false)?,
    };
    print!("{}", file.to_json());
    Ok(())
}
