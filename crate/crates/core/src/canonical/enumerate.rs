//! Exhaustive enumeration of graphs with a fixed vertex profile.
//!
//! Vertex `i` (1-based) of the profile receives id `i`. Edges are the
//! perfect matchings between sources (graph inputs, vertex output ports)
//! and targets (graph outputs, vertex input ports); targets are filled in
//! sorted order and a choice is rejected as soon as it closes a directed
//! cycle.

use std::collections::{BTreeSet, HashMap};

use super::form::{canonicalize, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Source, Target, Vertex, VertexId};
use crate::perm::Perm;

/// Caps on the size of enumerated families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimits {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_vertices: 8, max_edges: 16 }
    }
}

impl EnumLimits {
    fn admit(&self, vertices: usize, edges: usize) -> Result<()> {
        if vertices > self.max_vertices {
            return Err(Error::ResourceLimit(format!("{vertices} vertices requested, limit is {}", self.max_vertices)));
        }
        if edges > self.max_edges {
            return Err(Error::ResourceLimit(format!("{edges} edges requested, limit is {}", self.max_edges)));
        }
        Ok(())
    }
}

/// A graph together with a numbering of its vertices: `vertex_order[i]` is
/// the vertex numbered `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberedGraph<L = ()> {
    pub graph: Graph<L>,
    pub vertex_order: Vec<VertexId>,
}

impl<L: Clone> NumberedGraph<L> {
    /// Numbers the vertices in increasing id order.
    pub fn by_id(graph: Graph<L>) -> Self {
        let vertex_order = graph.vertices().keys().copied().collect();
        NumberedGraph { graph, vertex_order }
    }

    /// The graph whose vertex labels carry their number.
    pub fn numbered_labels(&self) -> Graph<(usize, L)> {
        let position: std::collections::HashMap<VertexId, usize> =
            self.vertex_order.iter().enumerate().map(|(i, &v)| (v, i + 1)).collect();
        self.graph.map_labels(|v, l| (position[&v], l.clone()))
    }

    /// Renumbering by `w`: the vertex numbered `i` becomes the one that was
    /// numbered `w(i)`.
    pub fn renumbered(&self, w: &Perm) -> Result<Self> {
        if w.len() != self.vertex_order.len() {
            return Err(Error::PermutationSize { expected: self.vertex_order.len(), found: w.len() });
        }
        Ok(NumberedGraph {
            graph: self.graph.clone(),
            vertex_order: (0..w.len()).map(|i| self.vertex_order[w.apply(i)]).collect(),
        })
    }
}

impl<L: Ord + Clone> NumberedGraph<L> {
    /// Canonical form of the numbered graph: numbering and labels are both
    /// preserved by the isomorphisms it identifies.
    pub fn canonical(&self) -> Result<CanonicalForm<(usize, L)>> {
        canonicalize(&self.numbered_labels())
    }
}

/// Calls `visit` on every valid graph with the given vertices (ids
/// `1..=r` in profile order) and boundary, in deterministic order.
pub fn for_each_wiring<L: Clone>(
    profile: &[Vertex<L>],
    m: usize,
    n: usize,
    limits: EnumLimits,
    mut visit: impl FnMut(Graph<L>),
) -> Result<()> {
    let r = profile.len();
    let out_total: usize = profile.iter().map(|v| v.coarity).sum();
    let in_total: usize = profile.iter().map(|v| v.arity).sum();
    let edges = m + out_total;
    limits.admit(r, edges.max(n + in_total))?;
    if r > 64 {
        return Err(Error::ResourceLimit("at most 64 vertices can be enumerated".into()));
    }
    if edges != n + in_total {
        return Ok(());
    }

    let mut sources: Vec<Source> = (1..=m).map(Source::Input).collect();
    let mut targets: Vec<Target> = (1..=n).map(Target::Output).collect();
    for (i, v) in profile.iter().enumerate() {
        let id = i as VertexId + 1;
        sources.extend((1..=v.coarity).map(|k| Source::VertexOut(id, k)));
        targets.extend((1..=v.arity).map(|k| Target::VertexIn(id, k)));
    }
    let vertices: Vec<(VertexId, Vertex<L>)> =
        profile.iter().enumerate().map(|(i, v)| (i as VertexId + 1, v.clone())).collect();

    let mut state =
        Matching { sources, targets, used: vec![false; edges], chosen: Vec::with_capacity(edges), reach: vec![0; r] };
    state.run(&mut |chosen: &[Edge]| {
        visit(Graph::from_parts(m, n, vertices.iter().cloned(), chosen.iter().copied()));
    });
    Ok(())
}

struct Matching {
    sources: Vec<Source>,
    targets: Vec<Target>,
    used: Vec<bool>,
    chosen: Vec<Edge>,
    // reach[x]: bitmask of vertices reachable from vertex index x.
    reach: Vec<u64>,
}

impl Matching {
    fn run(&mut self, emit: &mut dyn FnMut(&[Edge])) {
        let depth = self.chosen.len();
        if depth == self.targets.len() {
            emit(&self.chosen);
            return;
        }
        let target = self.targets[depth];
        for s in 0..self.sources.len() {
            if self.used[s] {
                continue;
            }
            let source = self.sources[s];
            let saved = match (source.vertex(), target.vertex()) {
                (Some(u), Some(v)) => {
                    let (u, v) = (u as usize - 1, v as usize - 1);
                    if u == v || self.reach[v] & (1 << u) != 0 {
                        continue;
                    }
                    let saved = self.reach.clone();
                    let gained = self.reach[v] | (1 << v);
                    for x in 0..self.reach.len() {
                        if x == u || self.reach[x] & (1 << u) != 0 {
                            self.reach[x] |= gained;
                        }
                    }
                    Some(saved)
                }
                _ => None,
            };
            self.used[s] = true;
            self.chosen.push(Edge::new(source, target));
            self.run(emit);
            self.chosen.pop();
            self.used[s] = false;
            if let Some(saved) = saved {
                self.reach = saved;
            }
        }
    }
}

/// Every valid graph with the given vertex arities `(a_i, b_i)` and
/// boundary `(m, n)`. Numbered graphs come in enumeration order; with
/// `upto_iso` one canonical representative per isomorphism class (numbering
/// forgotten) is returned, sorted by canonical form.
pub fn enumerate_graphs(
    arities: &[(usize, usize)],
    m: usize,
    n: usize,
    upto_iso: bool,
    limits: EnumLimits,
) -> Result<Vec<NumberedGraph>> {
    let profile: Vec<Vertex> = arities.iter().map(|&(a, b)| Vertex::new(a, b, ())).collect();
    enumerate_labeled(&profile, m, n, upto_iso, limits)
}

/// [`enumerate_graphs`] for labeled vertex profiles.
pub fn enumerate_labeled<L: Ord + Clone>(
    profile: &[Vertex<L>],
    m: usize,
    n: usize,
    upto_iso: bool,
    limits: EnumLimits,
) -> Result<Vec<NumberedGraph<L>>> {
    if upto_iso {
        let classes = iso_classes(profile, m, n, limits)?;
        return Ok(classes.into_iter().map(|c| NumberedGraph::by_id(c.into_graph())).collect());
    }
    let mut out = Vec::new();
    for_each_wiring(profile, m, n, limits, |g| out.push(NumberedGraph::by_id(g)))?;
    Ok(out)
}

/// Canonical forms of all graphs with the given profile, numbering forgotten.
pub fn iso_classes<L: Ord + Clone>(
    profile: &[Vertex<L>],
    m: usize,
    n: usize,
    limits: EnumLimits,
) -> Result<BTreeSet<CanonicalForm<L>>> {
    let mut classes = BTreeSet::new();
    let mut failure = None;
    for_each_wiring(profile, m, n, limits, |g| match canonicalize(&g) {
        Ok(c) => {
            classes.insert(c);
        }
        Err(e) => failure = Some(e),
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(classes),
    }
}

/// True when no non-identity renumbering of `g` is isomorphic to `g` by a
/// numbering-preserving isomorphism, i.e. `Σ_r` acts freely on its orbit.
pub fn free_action_check<L: Ord + Clone>(g: &NumberedGraph<L>) -> Result<bool> {
    g.graph.check()?;
    if let Some((&v, _)) = g.graph.vertices().iter().find(|(_, v)| v.arity == 0) {
        return Err(Error::Precondition(format!("vertex {v} has no inputs")));
    }
    let vertices = g.graph.vertices();
    let edges: BTreeSet<Edge> = g.graph.edges().iter().copied().collect();
    let order = &g.vertex_order;
    for w in Perm::all(order.len()) {
        if w.is_identity() {
            continue;
        }
        // The only numbering-preserving map from the renumbered graph to
        // `g` sends the vertex numbered `w(i)` to the one numbered `i`.
        let image: HashMap<VertexId, VertexId> = (0..order.len()).map(|i| (order[w.apply(i)], order[i])).collect();
        if image.iter().any(|(v, u)| vertices[v] != vertices[u]) {
            continue;
        }
        let moved = |e: &Edge| {
            let src = match e.src {
                Source::VertexOut(v, k) => Source::VertexOut(image[&v], k),
                s => s,
            };
            let dst = match e.dst {
                Target::VertexIn(v, k) => Target::VertexIn(image[&v], k),
                t => t,
            };
            Edge::new(src, dst)
        };
        if g.graph.edges().iter().all(|e| edges.contains(&moved(e))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Numbered and unnumbered counts for one vertex multiset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct ProfileCount {
    /// Numbered graphs whose vertex `i` has any type, summed over all
    /// distinct orderings of the multiset.
    pub numbered: u128,
    /// Isomorphism classes with the multiset as vertex profile.
    pub iso: u128,
}

/// Counts graphs with vertex multiset `profile` (in any order) and
/// boundary `(m, n)`.
pub fn profile_count<L: Ord + Clone>(
    profile: &[Vertex<L>],
    m: usize,
    n: usize,
    limits: EnumLimits,
) -> Result<ProfileCount> {
    let mut sorted = profile.to_vec();
    sorted.sort();
    let mut wirings: u128 = 0;
    let mut classes = BTreeSet::new();
    let mut failure = None;
    for_each_wiring(&sorted, m, n, limits, |g| {
        wirings += 1;
        match canonicalize(&g) {
            Ok(c) => {
                classes.insert(c);
            }
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(ProfileCount { numbered: wirings * distinct_orderings(&sorted), iso: classes.len() as u128 })
}

/// Number of distinct sequences that rearrange a sorted multiset.
pub fn distinct_orderings<T: PartialEq>(sorted: &[T]) -> u128 {
    let mut total = factorial(sorted.len());
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        total /= factorial(j - i);
        i = j;
    }
    total
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_unary_vertex_on_a_wire() {
        let gs = enumerate_graphs(&[(1, 1)], 1, 1, false, EnumLimits::default()).unwrap();
        assert_eq!(gs.len(), 1);
        assert!(gs[0].graph.is_valid());
    }

    #[test]
    fn two_chain_numberings() {
        let numbered = enumerate_graphs(&[(1, 1), (1, 1)], 1, 1, false, EnumLimits::default()).unwrap();
        assert_eq!(numbered.len(), 2);
        let classes = enumerate_graphs(&[(1, 1), (1, 1)], 1, 1, true, EnumLimits::default()).unwrap();
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn unbalanced_profile_is_empty() {
        assert!(enumerate_graphs(&[(2, 1)], 1, 1, false, EnumLimits::default()).unwrap().is_empty());
    }

    #[test]
    fn limits_are_enforced() {
        let limits = EnumLimits { max_vertices: 1, max_edges: 16 };
        assert!(matches!(enumerate_graphs(&[(1, 1), (1, 1)], 1, 1, false, limits), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn orderings_of_multisets() {
        assert_eq!(distinct_orderings(&[1, 1, 2]), 3);
        assert_eq!(distinct_orderings::<u8>(&[]), 1);
        assert_eq!(distinct_orderings(&[1, 2, 3, 4]), 24);
    }

    #[test]
    fn counts_for_a_split_and_a_merge() {
        let profile = [Vertex::new(1, 2, ()), Vertex::new(2, 1, ())];
        let count = profile_count(&profile, 1, 1, EnumLimits::default()).unwrap();
        assert_eq!(count, ProfileCount { numbered: 4, iso: 2 });
    }
}
