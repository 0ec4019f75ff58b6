//! Endomorphism props of rational vector spaces and evaluation of prop
//! elements as linear maps.
//!
//! Matrices of maps `X^{⊗m} → X^{⊗n}` have `d^n` rows and `d^m` columns;
//! as tensors, output axes come before input axes in boundary order.

mod check;
mod end_prop;
mod eval;
mod rat;

pub use check::{
    diagram_end_check, element_square, eval_is_morphism, morphism_prop_membership, square_defect, transport,
    DiagramArrow, DiagramObject, IndexDiagram, MorphismReport,
};
pub use end_prop::{permute_boundary, EndProp, LinearMap};
pub use eval::{evaluate, evaluate_element, evaluate_in_order, evaluate_with, AlgebraAssignment, EvalLimits};
pub use rat::{format_rational, parse_rational, RatTensor, Rational};
