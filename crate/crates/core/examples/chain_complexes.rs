//! Tensor products, duals, the Koszul swap and alternating traces of small complexes.

use std::collections::BTreeMap;

use spantrace::chainalg::{alt_trace, cx_dual, cx_swap, cx_tensor, ChainMap, Complex, Matrix, Ring};

fn main() -> spantrace::Result<()> {
    let z = Ring::integers();
    // Q = Λ --2--> Λ in degrees 0, 1.
    let q = Complex::new(
        z,
        BTreeMap::from([(0, 1), (1, 1)]),
        BTreeMap::from([(0, Matrix::scalar(z, 1, 2))]),
    )?;
    let qq = cx_tensor(&q, &q)?;
    println!("Q⊗Q ranks {:?}, d^1 = {:?}", qq.ranks(), qq.d(1).to_rows());

    let dual = cx_dual(&q);
    println!("Q^∨ ranks {:?}, d^-1 = {:?}", dual.ranks(), dual.d(-1).to_rows());

    let swap = cx_swap(&q, &q)?;
    println!("swap in degree 2: {:?}", swap.component(2).to_rows());

    let e = ChainMap::scalar(&q, 5);
    println!("χ(Q) = {}, alt_trace(5·id) = {}", q.euler_characteristic(), alt_trace(&e)?);

    let z7 = Ring::new(7)?;
    let p = Complex::free(z7, -1, 3);
    println!("over Z/7: alt_trace(4·id on Λ[1]^3) = {}", alt_trace(&ChainMap::scalar(&p, 4))?);
    Ok(())
}
