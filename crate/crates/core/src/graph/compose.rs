//! The prop operations on graphs: horizontal and vertical composition,
//! boundary permutations, and vertex substitution.

use std::collections::HashMap;

use super::{Edge, Graph, Source, Target, Vertex, VertexId};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::union_find::UnionFind;

impl<L: Clone> Graph<L> {
    /// Disjoint union, placing `other` to the right: its inputs and outputs
    /// are shifted past ours and its vertex ids are offset by our largest id.
    pub fn hcompose(&self, other: &Graph<L>) -> Result<Graph<L>> {
        self.check()?;
        other.check()?;
        let offset = self.max_vertex_id();
        let (k, m) = (self.inputs(), self.outputs());
        let shifted = other.rename_vertices(|v| v + offset);
        let edges = self.edges().iter().copied().chain(shifted.edges().iter().map(|e| {
            let src = match e.src {
                Source::Input(i) => Source::Input(i + k),
                s => s,
            };
            let dst = match e.dst {
                Target::Output(j) => Target::Output(j + m),
                t => t,
            };
            Edge::new(src, dst)
        }));
        let vertices = self.vertices().iter().chain(shifted.vertices().iter()).map(|(&id, v)| (id, v.clone()));
        Ok(Graph::from_parts(k + other.inputs(), m + other.outputs(), vertices, edges.collect::<Vec<_>>()))
    }

    /// Plugs the outputs of `self` into the inputs of `bottom`.
    ///
    /// The edge into output `j` of `self` and the edge out of input `j` of
    /// `bottom` are fused into one edge; through-wires compose transitively.
    pub fn vcompose(&self, bottom: &Graph<L>) -> Result<Graph<L>> {
        self.check()?;
        bottom.check()?;
        if self.outputs() != bottom.inputs() {
            return Err(Error::BoundaryMismatch(format!(
                "top has {} outputs but bottom has {} inputs",
                self.outputs(),
                bottom.inputs()
            )));
        }
        let offset = self.max_vertex_id();
        let bottom = bottom.rename_vertices(|v| v + offset);

        // Segments: top edges first, then bottom edges.
        let top_edges = self.edges();
        let bottom_edges = bottom.edges();
        let split = top_edges.len();
        let mut uf = UnionFind::new(split + bottom_edges.len());
        let mut into_output: HashMap<usize, usize> = HashMap::new();
        for (i, e) in top_edges.iter().enumerate() {
            if let Target::Output(j) = e.dst {
                into_output.insert(j, i);
            }
        }
        for (i, e) in bottom_edges.iter().enumerate() {
            if let Source::Input(j) = e.src {
                uf.union(into_output[&j], split + i);
            }
        }

        let mut src: HashMap<usize, Source> = HashMap::new();
        let mut dst: HashMap<usize, Target> = HashMap::new();
        for (i, e) in top_edges.iter().enumerate() {
            let root = uf.find(i);
            src.insert(root, e.src);
            if !matches!(e.dst, Target::Output(_)) {
                dst.insert(root, e.dst);
            }
        }
        for (i, e) in bottom_edges.iter().enumerate() {
            let root = uf.find(split + i);
            if !matches!(e.src, Source::Input(_)) {
                src.insert(root, e.src);
            }
            dst.insert(root, e.dst);
        }
        let edges: Vec<Edge> = src.iter().map(|(root, &s)| Edge::new(s, dst[root])).collect();

        let vertices = self.vertices().iter().chain(bottom.vertices().iter()).map(|(&id, v)| (id, v.clone()));
        Ok(Graph::from_parts(self.inputs(), bottom.outputs(), vertices, edges))
    }

    /// Precomposes with the wire permutation sending input `i` to `w(i)`:
    /// the edge leaving input `w(i)` of `self` leaves input `i` of the result.
    pub fn permute_inputs(&self, w: &Perm) -> Result<Graph<L>> {
        if w.len() != self.inputs() {
            return Err(Error::PermutationSize { expected: self.inputs(), found: w.len() });
        }
        let inv = w.inverse();
        Ok(Graph::from_parts(
            self.inputs(),
            self.outputs(),
            self.vertices().iter().map(|(&id, v)| (id, v.clone())),
            self.edges().iter().map(|e| match e.src {
                Source::Input(i) => Edge::new(Source::Input(inv.apply(i - 1) + 1), e.dst),
                _ => *e,
            }),
        ))
    }

    /// Postcomposes with the wire permutation sending output `j` to `w(j)`.
    pub fn permute_outputs(&self, w: &Perm) -> Result<Graph<L>> {
        if w.len() != self.outputs() {
            return Err(Error::PermutationSize { expected: self.outputs(), found: w.len() });
        }
        Ok(Graph::from_parts(
            self.inputs(),
            self.outputs(),
            self.vertices().iter().map(|(&id, v)| (id, v.clone())),
            self.edges().iter().map(|e| match e.dst {
                Target::Output(j) => Edge::new(e.src, Target::Output(w.apply(j - 1) + 1)),
                _ => *e,
            }),
        ))
    }
}

impl<L> Graph<L> {
    /// Replaces every vertex `v` by a graph whose boundary equals the
    /// arity and coarity of `v`, splicing boundary wires.
    ///
    /// Inner vertex ids are offset by the running total of the previous
    /// inner graphs' largest ids, in increasing order of `v`.
    pub fn substitute<M: Clone>(
        &self,
        mut inner: impl FnMut(VertexId, &Vertex<L>) -> Result<Graph<M>>,
    ) -> Result<Graph<M>> {
        self.check()?;

        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        enum Fuse {
            In(VertexId, usize),
            Out(VertexId, usize),
        }
        enum End<P> {
            Real(P),
            Fused(Fuse),
        }
        struct Segment {
            src: End<Source>,
            dst: End<Target>,
        }

        let mut segments: Vec<Segment> = self
            .edges()
            .iter()
            .map(|e| Segment {
                src: match e.src {
                    Source::Input(i) => End::Real(Source::Input(i)),
                    Source::VertexOut(v, k) => End::Fused(Fuse::Out(v, k)),
                },
                dst: match e.dst {
                    Target::Output(j) => End::Real(Target::Output(j)),
                    Target::VertexIn(v, k) => End::Fused(Fuse::In(v, k)),
                },
            })
            .collect();

        let mut vertices: Vec<(VertexId, Vertex<M>)> = Vec::new();
        let mut offset: VertexId = 0;
        for (&id, vertex) in self.vertices() {
            let g = inner(id, vertex)?;
            g.check()?;
            if g.boundary() != (vertex.arity, vertex.coarity) {
                return Err(Error::BoundaryMismatch(format!(
                    "vertex {id} is a ({}, {})-vertex but its replacement is a ({}, {})-graph",
                    vertex.arity,
                    vertex.coarity,
                    g.inputs(),
                    g.outputs()
                )));
            }
            for e in g.edges() {
                segments.push(Segment {
                    src: match e.src {
                        Source::Input(k) => End::Fused(Fuse::In(id, k)),
                        Source::VertexOut(w, k) => End::Real(Source::VertexOut(w + offset, k)),
                    },
                    dst: match e.dst {
                        Target::Output(k) => End::Fused(Fuse::Out(id, k)),
                        Target::VertexIn(w, k) => End::Real(Target::VertexIn(w + offset, k)),
                    },
                });
            }
            vertices.extend(g.vertices().iter().map(|(&w, v)| (w + offset, v.clone())));
            offset += g.max_vertex_id();
        }

        fn fused<P>(end: &End<P>) -> Option<Fuse> {
            match end {
                End::Fused(f) => Some(*f),
                End::Real(_) => None,
            }
        }

        // Each fusion point is the endpoint of exactly two segments.
        let mut uf = UnionFind::new(segments.len());
        let mut seen: HashMap<Fuse, usize> = HashMap::new();
        for (i, s) in segments.iter().enumerate() {
            let fused = [fused(&s.src), fused(&s.dst)];
            for f in fused.into_iter().flatten() {
                if let Some(j) = seen.insert(f, i) {
                    uf.union(i, j);
                }
            }
        }
        let (class, count) = uf.classes();
        let mut src: Vec<Option<Source>> = vec![None; count];
        let mut dst: Vec<Option<Target>> = vec![None; count];
        for (i, s) in segments.iter().enumerate() {
            if let End::Real(p) = s.src {
                src[class[i]] = Some(p);
            }
            if let End::Real(p) = s.dst {
                dst[class[i]] = Some(p);
            }
        }
        let edges = src
            .into_iter()
            .zip(dst)
            .map(|(s, d)| match (s, d) {
                (Some(s), Some(d)) => Ok(Edge::new(s, d)),
                _ => Err(Error::BoundaryMismatch("unterminated wire after substitution".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Graph::from_parts(self.inputs(), self.outputs(), vertices, edges))
    }
}
