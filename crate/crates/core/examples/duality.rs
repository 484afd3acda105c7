//! Duality data with certified triangle identities, biduality and duals of morphisms.

use std::collections::BTreeMap;

use spantrace::chainalg::{ChainMap, Complex, Matrix, Ring};
use spantrace::corrcat::{cc_iso_search, CCMorphism, CCObject};
use spantrace::dualtrace::{biduality, canonical_bidual, dual_of_morphism, make_dual};
use spantrace::finspan::{BaseSet, FinOver, OverMap};
use spantrace::sheafops::Sheaf;

fn main() -> spantrace::Result<()> {
    let z = Ring::integers();
    let b = BaseSet::point();
    let p = FinOver::from_pairs(&b, &[("p", "pt")])?;
    let v = Complex::free(z, 0, 2);
    let a = CCObject::new(Sheaf::new(z, p.clone(), vec![v.clone()])?);

    let d = make_dual(&a)?;
    println!("ev = {:?}", d.ev.component(0).component(0).to_rows());
    println!("coev = {:?}", d.coev.component(0).component(0).to_rows());
    println!(
        "triangle cells invertible: {} {}",
        d.left_triangle.is_invertible(),
        d.right_triangle.is_invertible()
    );

    let bd = biduality(&d)?;
    println!("biduality matches the identification: {}", cc_iso_search(&bd, &canonical_bidual(&a)?).is_some());

    let m = Matrix::from_rows(z, 2, &[vec![1, 2], vec![3, 4]])?;
    let f = ChainMap::new(v.clone(), v, BTreeMap::from([(0, m)]))?;
    let u = CCMorphism::graph(&OverMap::identity(&p), &a, &a, vec![f])?;
    let du = dual_of_morphism(&u, &d, &d)?;
    println!("dual of [[1,2],[3,4]]: {:?}", du.component(0).component(0).to_rows());
    Ok(())
}
