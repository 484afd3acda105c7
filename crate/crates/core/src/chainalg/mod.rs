//! Exact linear algebra and bounded cochain complexes over `Z` or `Z/m`.

mod chain_map;
mod complex;
mod matrix;
mod ring;

pub use chain_map::{
    alt_trace, cx_assoc, cx_bidual, cx_coev, cx_curry, cx_ev, cx_sum_inclusion, cx_sum_projection,
    cx_swap, cx_uncurry, homotopy_perturb, map_dual, map_inverse, map_tensor, ChainMap, Homotopy,
};
pub use complex::{
    cx_direct_sum, cx_dual, cx_tensor, cx_validate, Complex, SumLayout, Summand, TensorLayout,
};
pub use matrix::{mat_kron, mat_mul, mat_trace, Matrix};
pub use ring::{Ring, Scalar};
