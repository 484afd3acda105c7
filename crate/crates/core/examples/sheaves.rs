//! Pushforward, pullback and Verdier duality of sheaves of complexes, and pushing classes.

use spantrace::chainalg::{Complex, Ring};
use spantrace::finspan::{BaseSet, FinOver, OverMap};
use spantrace::sheafops::{omega_push, pull, push, verdier, OmegaClass, Sheaf};

fn main() -> spantrace::Result<()> {
    let z = Ring::integers();
    let b = BaseSet::point();
    let x = FinOver::from_pairs(&b, &[("a", "pt"), ("b", "pt"), ("c", "pt")])?;
    let y = FinOver::from_pairs(&b, &[("u", "pt"), ("v", "pt")])?;
    let f = OverMap::from_pairs(&x, &y, &[("a", "u"), ("b", "u"), ("c", "v")])?;
    let l = Sheaf::new(
        z,
        x.clone(),
        vec![Complex::free(z, 0, 1), Complex::free(z, 1, 2), Complex::free(z, 0, 1)],
    )?;

    let pushed = push(&f, &l)?;
    for (i, s) in pushed.stalks().iter().enumerate() {
        println!("(f_!L)_{} ranks {:?}", y.label(i), s.ranks());
    }
    let back = pull(&f, &pushed)?;
    println!("f^*f_!L at a has ranks {:?}", back.stalk(0).ranks());
    println!("D(L) at b has ranks {:?}", verdier(&l).stalk(1).ranks());

    let chi = OmegaClass::new(z, x.clone(), l.stalks().iter().map(|s| s.euler_characteristic()).collect())?;
    println!("f_* of pointwise χ: {:?}", omega_push(&f, &chi)?.entries());
    Ok(())
}
