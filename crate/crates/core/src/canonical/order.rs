//! Vertex orders from edge-path labels.
//!
//! A path from graph input `i` to a vertex is labeled by the sequence
//! `i, k₁, j₁, k₂, j₂, …, kₜ`: the input index, then alternately the input
//! port by which the path enters a vertex and the output port by which it
//! leaves it, ending with the input port of the target vertex. Vertices
//! are ordered by the lexicographically least label among the paths that
//! reach them. Only port numbers and boundary indices enter the labels,
//! so the order commutes with boundary-preserving isomorphisms.
//!
//! The mirrored order uses paths from a graph output backwards:
//! `j, k₁, i₁, …, kₜ` with output ports and input ports exchanged.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Source, Target, VertexId};

pub type PathLabel = Vec<usize>;

/// Least input-path label of every vertex reachable from a graph input.
pub fn input_path_labels<L>(g: &Graph<L>) -> Result<HashMap<VertexId, PathLabel>> {
    g.check()?;
    let topo = g.topological_order().expect("valid graphs are acyclic");
    let wiring = g.wiring();
    let mut labels: HashMap<VertexId, PathLabel> = HashMap::new();
    for v in topo {
        let arity = g.vertex(v).expect("vertex from topological order").arity;
        let mut best: Option<PathLabel> = None;
        for k in 1..=arity {
            let candidate = match wiring.source_of[&Target::VertexIn(v, k)] {
                Source::Input(i) => Some(vec![i, k]),
                Source::VertexOut(u, j) => labels.get(&u).map(|prefix| {
                    let mut label = prefix.clone();
                    label.extend([j, k]);
                    label
                }),
            };
            if let Some(c) = candidate {
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
        }
        if let Some(b) = best {
            labels.insert(v, b);
        }
    }
    Ok(labels)
}

/// Least output-path label of every vertex with a path to a graph output.
pub fn output_path_labels<L>(g: &Graph<L>) -> Result<HashMap<VertexId, PathLabel>> {
    g.check()?;
    let mut topo = g.topological_order().expect("valid graphs are acyclic");
    topo.reverse();
    let wiring = g.wiring();
    let mut labels: HashMap<VertexId, PathLabel> = HashMap::new();
    for v in topo {
        let coarity = g.vertex(v).expect("vertex from topological order").coarity;
        let mut best: Option<PathLabel> = None;
        for k in 1..=coarity {
            let candidate = match wiring.target_of[&Source::VertexOut(v, k)] {
                Target::Output(j) => Some(vec![j, k]),
                Target::VertexIn(w, i) => labels.get(&w).map(|prefix| {
                    let mut label = prefix.clone();
                    label.extend([i, k]);
                    label
                }),
            };
            if let Some(c) = candidate {
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
        }
        if let Some(b) = best {
            labels.insert(v, b);
        }
    }
    Ok(labels)
}

fn sorted_by_label(labels: &HashMap<VertexId, PathLabel>) -> Vec<VertexId> {
    let mut vs: Vec<VertexId> = labels.keys().copied().collect();
    vs.sort_by(|a, b| labels[a].cmp(&labels[b]));
    vs
}

/// Vertices ordered by their least input-path label.
///
/// Fails with [`Error::Unreachable`] when some vertex has no path from a
/// graph input, which happens exactly when a vertex without inputs lies
/// upstream of it.
pub fn input_path_order<L>(g: &Graph<L>) -> Result<Vec<VertexId>> {
    let labels = input_path_labels(g)?;
    if let Some(&v) = g.vertices().keys().find(|v| !labels.contains_key(v)) {
        return Err(Error::Unreachable(v));
    }
    Ok(sorted_by_label(&labels))
}

/// Vertices ordered by their least output-path label; the mirror image of
/// [`input_path_order`].
pub fn output_path_order<L>(g: &Graph<L>) -> Result<Vec<VertexId>> {
    let labels = output_path_labels(g)?;
    if let Some(&v) = g.vertices().keys().find(|v| !labels.contains_key(v)) {
        return Err(Error::Unreachable(v));
    }
    Ok(sorted_by_label(&labels))
}

pub(crate) fn ordered_subset(labels: &HashMap<VertexId, PathLabel>) -> Vec<VertexId> {
    sorted_by_label(labels)
}
