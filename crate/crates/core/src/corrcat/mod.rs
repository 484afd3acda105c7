//! The 2-category of cohomological correspondences over a finite base.

mod cell;
mod hom;
mod morphism;
mod push;

pub use cell::{
    assoc_cell, assoc_cell_inv, cc_cell_check, cc_iso_search, cc_recoord, left_unit_cell,
    left_unit_cell_inv, right_unit_cell, right_unit_cell_inv, vchain, whisker_left, whisker_right,
    CCCell,
};
pub use hom::{curry, hom_evaluation, internal_hom, uncurry};
pub use morphism::{
    associator, cc_compose, cc_inverse, cc_tensor, coevaluation, evaluation, left_unitor,
    right_unitor, symmetry, CCExpr, CCMorphism, CCObject,
};
pub use push::{
    comparison_cell, f_adjunction, f_conatural, f_natural, shriek_push, Adjunction, PushDiagram,
};

#[cfg(test)]
mod tests;
