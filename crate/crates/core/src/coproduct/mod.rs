//! Elements of a coproduct `P ∨ Free(M)` as mixed graphs, and the rewriting
//! that merges `P` vertices.
//!
//! Collapsed forms are compared up to isomorphism and up to renumbering the
//! ports of `P` vertices (with the label permuted along); two graphs equal
//! in that sense denote the same element. The expansion into the free
//! prop on atoms and generators is the equality oracle.

mod collapse;
mod mixed;
mod witness;

pub use collapse::{collapse, collapse_exhaustive, collapse_greedy, Irreducible, Strategy, MAX_STATES};
pub use mixed::{
    check_mixed, expand_all, merge, mergeable, mergeable_pairs, normal_form, reorder_ports, MixedGraph, MixedLabel,
    Tagged, MAX_PORT_ORBIT,
};
pub use witness::{check_witness, non_confluence_witness, Witness, WitnessBounds};
