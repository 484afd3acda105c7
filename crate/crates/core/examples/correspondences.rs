//! Cohomological correspondences: composition, invertible cells and pushing along a square.

use spantrace::chainalg::{ChainMap, Complex, Ring};
use spantrace::corrcat::{
    cc_compose, cc_iso_search, comparison_cell, cc_cell_check, shriek_push, CCMorphism, CCObject,
    PushDiagram,
};
use spantrace::finspan::{BaseSet, FinOver, OverMap, Span};
use spantrace::sheafops::Sheaf;

fn main() -> spantrace::Result<()> {
    let z = Ring::integers();
    let b = BaseSet::point();
    let x = FinOver::from_pairs(&b, &[("a", "pt"), ("b", "pt")])?;
    let stalk = Complex::free(z, 0, 1);
    let a = CCObject::new(Sheaf::constant(&x, &stalk));

    // The swap a <-> b as a correspondence with components ×2.
    let c = FinOver::from_pairs(&b, &[("c0", "pt"), ("c1", "pt")])?;
    let span = Span::new(
        OverMap::new(c.clone(), x.clone(), vec![0, 1])?,
        OverMap::new(c.clone(), x.clone(), vec![1, 0])?,
    )?;
    let twice = ChainMap::scalar(&stalk, 2);
    let u = CCMorphism::new(a.clone(), a.clone(), span, vec![twice.clone(), twice])?;

    let uu = cc_compose(&u, &u)?;
    println!("u∘u apex {:?}", uu.apex().labels());
    let lhs = cc_compose(&uu, &u)?;
    let rhs = cc_compose(&u, &uu)?;
    println!("associativity cell found: {}", cc_iso_search(&lhs, &rhs).is_some());

    // Push u along X -> pt.
    let pt = FinOver::base_set(&b);
    let to_pt = OverMap::to_base(&x);
    let diag = PushDiagram::new(to_pt.clone(), OverMap::to_base(&c), to_pt, u.span().clone(), Span::identity(&pt))?;
    let pushed = shriek_push(&diag, &u)?;
    println!("pushed component: {:?}", pushed.component(0).component(0).to_rows());
    cc_cell_check(&comparison_cell(&diag, &u, &pushed)?)?;
    println!("comparison cell checks out");
    Ok(())
}
