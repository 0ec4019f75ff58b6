//! Directed acyclic `(m, n)`-port-graphs.
//!
//! A graph has `m` numbered inputs, `n` numbered outputs and a finite set of
//! vertices, each with numbered input and output ports. Every boundary
//! position and every vertex port is the endpoint of exactly one edge, and
//! the edges form no directed cycle. Ports and boundary positions are
//! 1-based throughout.
//!
//! Vertices carry a label of type `L`: `()` for bare graphs, generator
//! names for labeled graphs, nested elements for graphs of graphs.

mod compose;
mod validate;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::fmt;

pub use validate::Violation;

use crate::error::{Error, Result};

pub type VertexId = u32;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex<L = ()> {
    /// Number of input ports.
    pub arity: usize,
    /// Number of output ports.
    pub coarity: usize,
    pub label: L,
}

impl<L> Vertex<L> {
    pub fn new(arity: usize, coarity: usize, label: L) -> Self {
        Vertex { arity, coarity, label }
    }
}

/// Where an edge starts: a graph input or an output port of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    Input(usize),
    VertexOut(VertexId, usize),
}

/// Where an edge ends: a graph output or an input port of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Output(usize),
    VertexIn(VertexId, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: Source,
    pub dst: Target,
}

impl Edge {
    pub fn new(src: Source, dst: Target) -> Self {
        Edge { src, dst }
    }
}

/// Any port of a graph, used in diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Port {
    Input(usize),
    Output(usize),
    VertexIn(VertexId, usize),
    VertexOut(VertexId, usize),
}

impl From<Source> for Port {
    fn from(s: Source) -> Port {
        match s {
            Source::Input(i) => Port::Input(i),
            Source::VertexOut(v, k) => Port::VertexOut(v, k),
        }
    }
}

impl From<Target> for Port {
    fn from(t: Target) -> Port {
        match t {
            Target::Output(j) => Port::Output(j),
            Target::VertexIn(v, k) => Port::VertexIn(v, k),
        }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Port::Input(i) => write!(f, "graph input {i}"),
            Port::Output(j) => write!(f, "graph output {j}"),
            Port::VertexIn(v, k) => write!(f, "input port {k} of vertex {v}"),
            Port::VertexOut(v, k) => write!(f, "output port {k} of vertex {v}"),
        }
    }
}

impl Source {
    pub fn vertex(&self) -> Option<VertexId> {
        match *self {
            Source::Input(_) => None,
            Source::VertexOut(v, _) => Some(v),
        }
    }
}

impl Target {
    pub fn vertex(&self) -> Option<VertexId> {
        match *self {
            Target::Output(_) => None,
            Target::VertexIn(v, _) => Some(v),
        }
    }
}

/// A directed `(m, n)`-graph whose vertices carry labels of type `L`.
///
/// The structure is not validated on construction; see [`Graph::validate`].
/// Edges are kept sorted, so two graphs with the same vertex ids and
/// wiring compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph<L = ()> {
    inputs: usize,
    outputs: usize,
    vertices: BTreeMap<VertexId, Vertex<L>>,
    edges: Vec<Edge>,
}

impl<L> Graph<L> {
    pub fn from_parts(
        inputs: usize,
        outputs: usize,
        vertices: impl IntoIterator<Item = (VertexId, Vertex<L>)>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort();
        Graph { inputs, outputs, vertices: vertices.into_iter().collect(), edges }
    }

    /// The vertex-free graph wiring input `i` to output `i`.
    pub fn identity(n: usize) -> Self {
        Graph::from_parts(n, n, [], (1..=n).map(|i| Edge::new(Source::Input(i), Target::Output(i))))
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn boundary(&self) -> (usize, usize) {
        (self.inputs, self.outputs)
    }

    pub fn vertices(&self) -> &BTreeMap<VertexId, Vertex<L>> {
        &self.vertices
    }

    pub fn vertex(&self, id: VertexId) -> Option<&Vertex<L>> {
        self.vertices.get(&id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn max_vertex_id(&self) -> VertexId {
        self.vertices.keys().next_back().copied().unwrap_or(0)
    }

    pub fn map_labels<M>(&self, mut f: impl FnMut(VertexId, &L) -> M) -> Graph<M> {
        Graph {
            inputs: self.inputs,
            outputs: self.outputs,
            vertices: self
                .vertices
                .iter()
                .map(|(&id, v)| (id, Vertex::new(v.arity, v.coarity, f(id, &v.label))))
                .collect(),
            edges: self.edges.clone(),
        }
    }

    pub fn try_map_labels<M, E>(
        &self,
        mut f: impl FnMut(VertexId, &L) -> std::result::Result<M, E>,
    ) -> std::result::Result<Graph<M>, E> {
        let mut vertices = BTreeMap::new();
        for (&id, v) in &self.vertices {
            vertices.insert(id, Vertex::new(v.arity, v.coarity, f(id, &v.label)?));
        }
        Ok(Graph { inputs: self.inputs, outputs: self.outputs, vertices, edges: self.edges.clone() })
    }

    /// Drops the labels.
    pub fn shape(&self) -> Graph<()> {
        self.map_labels(|_, _| ())
    }

    /// Renames vertices through `rename`, which must be injective on the
    /// vertex set.
    pub fn rename_vertices(&self, rename: impl Fn(VertexId) -> VertexId) -> Graph<L>
    where
        L: Clone,
    {
        let src = |s: Source| match s {
            Source::VertexOut(v, k) => Source::VertexOut(rename(v), k),
            s => s,
        };
        let dst = |t: Target| match t {
            Target::VertexIn(v, k) => Target::VertexIn(rename(v), k),
            t => t,
        };
        Graph::from_parts(
            self.inputs,
            self.outputs,
            self.vertices.iter().map(|(&id, v)| (rename(id), v.clone())),
            self.edges.iter().map(|e| Edge::new(src(e.src), dst(e.dst))),
        )
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate::violations(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Fails with [`Error::InvalidGraph`] unless the graph is valid.
    pub fn check(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(violations))
        }
    }

    /// Edge lookup by endpoint; meaningful for valid graphs.
    pub fn wiring(&self) -> Wiring {
        let mut source_of = HashMap::with_capacity(self.edges.len());
        let mut target_of = HashMap::with_capacity(self.edges.len());
        for e in &self.edges {
            source_of.insert(e.dst, e.src);
            target_of.insert(e.src, e.dst);
        }
        Wiring { source_of, target_of }
    }

    /// Vertex successors along edges, with multiplicity.
    pub fn successors(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut succ: BTreeMap<VertexId, Vec<VertexId>> = self.vertices.keys().map(|&v| (v, Vec::new())).collect();
        for e in &self.edges {
            if let (Some(u), Some(v)) = (e.src.vertex(), e.dst.vertex()) {
                succ.entry(u).or_default().push(v);
            }
        }
        succ
    }

    /// Topological order of the vertices, smallest id first among ready
    /// vertices. `None` when the vertex graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let mut indegree: BTreeMap<VertexId, usize> = self.vertices.keys().map(|&v| (v, 0)).collect();
        let succ = self.successors();
        for targets in succ.values() {
            for t in targets {
                if let Some(d) = indegree.get_mut(t) {
                    *d += 1;
                }
            }
        }
        let mut ready: BinaryHeap<Reverse<VertexId>> =
            indegree.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| Reverse(v)).collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for t in &succ[&v] {
                if let Some(d) = indegree.get_mut(t) {
                    *d -= 1;
                    if *d == 0 {
                        ready.push(Reverse(*t));
                    }
                }
            }
        }
        (order.len() == self.vertices.len()).then_some(order)
    }
}

impl<L: Clone> Graph<L> {
    /// Renumbers vertices `1..=r` following `order`.
    pub fn renumber(&self, order: &[VertexId]) -> Graph<L> {
        let position: HashMap<VertexId, VertexId> =
            order.iter().enumerate().map(|(i, &v)| (v, i as VertexId + 1)).collect();
        self.rename_vertices(|v| position[&v])
    }
}

/// Endpoint lookup tables of a graph.
#[derive(Clone, Debug, Default)]
pub struct Wiring {
    pub source_of: HashMap<Target, Source>,
    pub target_of: HashMap<Source, Target>,
}

#[cfg(test)]
mod tests;
