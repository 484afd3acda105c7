//! The relative Lefschetz-Verdier formula on a seeded random pair of squares.

use spantrace::cli::generate::{generate, GenParams};
use spantrace::cli::resolve::Instance;
use spantrace::dualtrace::{pairing_functorial, pairing_functorial_split};

fn main() -> spantrace::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let inst = Instance::resolve(&generate(seed, &GenParams::default(), 0, false)?)?;
    let lv = inst.lv.as_ref().expect("generated instances carry a diagram");

    let r = pairing_functorial(lv)?;
    println!("s_*<u, v>         = {:?}", r.lhs.entries());
    println!("<p_! u, q_! v>    = {:?}", r.rhs.entries());
    println!("holds: {}", r.holds);

    let split = pairing_functorial_split(lv)?;
    for (name, step) in &split.steps {
        println!("  {name}: {} -> {} elements", step.source().len(), step.target().len());
    }
    println!("split route agrees: {}", split.holds);
    Ok(())
}
