//! Exact computation in free props.
//!
//! Elements of a free prop are isomorphism classes of labeled directed
//! acyclic port-graphs. This crate provides the graphs and their prop
//! operations, canonical forms and enumeration, free props with their monad
//! structure and universal property, rewriting in coproducts with a free
//! prop, evaluation in endomorphism props over the rationals, and the
//! finite-set skeleton of iterated pushout-products.

pub mod canonical;
pub mod coproduct;
pub mod error;
pub mod fixtures;
pub mod free_prop;
pub mod graph;
pub mod json;
#[cfg(any(test, feature = "oracles"))]
pub mod oracle;
pub mod perm;
pub mod pushout;
pub mod sample;
pub mod tensor;
pub mod union_find;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, Port, Source, Target, Vertex, VertexId, Violation};
pub use perm::Perm;
