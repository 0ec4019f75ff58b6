//! Canonical labeling, isomorphism testing, hashing and enumeration.

mod enumerate;
mod form;
mod order;

pub use enumerate::{
    distinct_orderings, enumerate_graphs, enumerate_labeled, factorial, for_each_wiring, free_action_check,
    iso_classes, profile_count, EnumLimits, NumberedGraph, ProfileCount,
};
pub use form::{
    canonical, canonical_order, canonicalize, form_hash, graph_hash, is_isomorphic, Canonical, CanonicalForm,
    OrderMethod,
};
pub use order::{input_path_labels, input_path_order, output_path_labels, output_path_order, PathLabel};
