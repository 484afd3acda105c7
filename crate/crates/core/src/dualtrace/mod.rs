//! Duals, traces and the fixed-point pairing.

mod duality;
mod lv;
mod pairing;

pub use duality::{
    biduality, canonical_bidual, dual_of_morphism, left_triangle_expr, make_dual,
    push_preserves_dual, right_triangle_expr, split_epi_criterion, DualityData, PushedDual,
    SplitEpi,
};
pub use lv::{
    pairing_functorial, pairing_functorial_split, pasted_cell, trace_of_cell, trace_symmetry,
    LvData, LvReport, SplitRoute,
};
pub use pairing::{
    characteristic_class, fixed_locus, fixed_points, global_fixed_point, local_terms,
    local_trace, locus_to_fixed_points, pairing, pairing_symmetry, trace, trace_expr,
    GlobalCheck, PairingResult, Symmetry,
};

#[cfg(test)]
mod tests;
