//! Traces, characteristic classes and the fixed-point pairing on a two-point example.

use spantrace::cli::resolve::Instance;
use spantrace::dualtrace::{characteristic_class, local_terms, make_dual, pairing, pairing_symmetry, trace};

fn main() -> spantrace::Result<()> {
    let inst = Instance::parse(include_str!("../tests/fixtures/two_point.json"))?;
    let (u, v) = (&inst.morphisms["u"], &inst.morphisms["v"]);
    let d = make_dual(u.source())?;

    println!("cc(L) = {:?}", characteristic_class(&d)?.class.entries());
    println!("tr(u) = {:?}", trace(u, &d)?.class.entries());

    let p = pairing(u, v, &d)?;
    println!("<u, v> = {:?}", p.class.entries());
    println!("local oracle agrees: {}", p.class == local_terms(u, v)?);
    println!("symmetric: {}", pairing_symmetry(u, v, &d, &d)?.holds);
    Ok(())
}
