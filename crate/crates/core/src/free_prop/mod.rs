//! Free props on a signature.
//!
//! An element is an isomorphism class of labeled graphs, composed by
//! composing representatives. The unit sends a generator to its corolla;
//! the multiplication flattens a graph of graphs.

mod count;
mod element;
mod morphism;
mod partial;
mod signature;

pub use count::{basis_elements, count_basis, multisets, BasisCount};
pub use element::{corolla, corolla_labels, expand, PropElement};
pub use morphism::{extend_morphism, FreeProp, Homomorphism, Prop};
pub use partial::{check_slots, filter_upto, filtration_degree, partial_labelings, PartialLabel, PartialLabeledGraph};
pub use signature::{Generator, Signature};
