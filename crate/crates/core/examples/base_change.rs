//! Pulling correspondences back along a map of bases.

use spantrace::basefunc::{functor_preserves, push_square};
use spantrace::cli::generate::{generate, GenParams};
use spantrace::cli::resolve::Instance;

fn main() -> spantrace::Result<()> {
    let inst = Instance::resolve(&generate(7, &GenParams::default(), 7, true)?)?;
    let bc = inst.base_change.as_ref().expect("requested base change");
    let lv = inst.lv.as_ref().expect("generated instances carry a diagram");
    println!("base {:?} -> {:?}", bc.source().labels(), bc.target().labels());

    let pulled = bc.pull_morphism(&lv.u)?;
    println!("u has {} components, g^*u has {}", lv.u.maps().len(), pulled.maps().len());

    let p = functor_preserves(bc, &lv.u, &lv.v)?;
    println!("{p:?}");
    println!("push square strict: {}", push_square(bc, &lv.upper, &lv.u)?);
    Ok(())
}
