//! Canonical forms of labeled graphs.
//!
//! Vertices reachable from a graph input are placed first, by input-path
//! label; vertices that only reach a graph output come next, by
//! output-path label. Any remaining vertices (those touching neither
//! boundary through a directed path) are split into connected components.
//! Each component is placed by a search for the least token sequence,
//! where placing a vertex emits its label, its degrees, and for every port
//! either the boundary index, the position and port of an already placed
//! neighbour, or a marker for an unplaced one. Positions inside a
//! component count from the end of the boundary-reachable prefix, so
//! components are ordered by their token sequences independently of each
//! other. The search branches only on ties of the least token.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use super::order::{input_path_labels, ordered_subset, output_path_labels};
use crate::error::Result;
use crate::graph::{Graph, Source, Target, VertexId};

/// How the canonical vertex order was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderMethod {
    /// Every vertex is reachable from a graph input.
    InputPaths,
    /// Every vertex reaches a graph output, but not every vertex is
    /// reachable from an input.
    OutputPaths,
    /// Input paths then output paths together cover every vertex.
    MixedPaths,
    /// Some vertices are ordered by minimal-serialization search.
    Search,
}

/// A graph renumbered `1..=r` in canonical order. Two graphs have equal
/// canonical forms exactly when they are isomorphic by a label- and
/// boundary-preserving isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm<L = ()>(Graph<L>);

impl<L> CanonicalForm<L> {
    pub fn graph(&self) -> &Graph<L> {
        &self.0
    }

    pub fn into_graph(self) -> Graph<L> {
        self.0
    }
}

#[derive(Clone, Debug)]
pub struct Canonical<L = ()> {
    pub form: CanonicalForm<L>,
    /// Original vertex ids in canonical order.
    pub order: Vec<VertexId>,
    pub method: OrderMethod,
}

pub fn canonical_order<L: Ord>(g: &Graph<L>) -> Result<(Vec<VertexId>, OrderMethod)> {
    let r = g.vertex_count();
    let from_inputs = input_path_labels(g)?;
    if from_inputs.len() == r {
        return Ok((ordered_subset(&from_inputs), OrderMethod::InputPaths));
    }
    let mut to_outputs = output_path_labels(g)?;
    if to_outputs.len() == r {
        return Ok((ordered_subset(&to_outputs), OrderMethod::OutputPaths));
    }
    let mut order = ordered_subset(&from_inputs);
    to_outputs.retain(|v, _| !from_inputs.contains_key(v));
    order.extend(ordered_subset(&to_outputs));
    if order.len() == r {
        return Ok((order, OrderMethod::MixedPaths));
    }
    let placed: std::collections::HashSet<VertexId> = order.iter().copied().collect();
    let rest: Vec<VertexId> = g.vertices().keys().copied().filter(|v| !placed.contains(v)).collect();
    Ok((search_order(g, order, rest), OrderMethod::Search))
}

pub fn canonical<L: Ord + Clone>(g: &Graph<L>) -> Result<Canonical<L>> {
    let (order, method) = canonical_order(g)?;
    Ok(Canonical { form: CanonicalForm(g.renumber(&order)), order, method })
}

pub fn canonicalize<L: Ord + Clone>(g: &Graph<L>) -> Result<CanonicalForm<L>> {
    Ok(canonical(g)?.form)
}

pub fn is_isomorphic<L: Ord + Clone>(g: &Graph<L>, h: &Graph<L>) -> Result<bool> {
    if g.boundary() != h.boundary() || g.vertex_count() != h.vertex_count() {
        g.check()?;
        h.check()?;
        return Ok(false);
    }
    Ok(canonicalize(g)? == canonicalize(h)?)
}

/// 64-bit FNV-1a digest of the canonical form.
pub fn graph_hash<L: Ord + Clone + Hash>(g: &Graph<L>) -> Result<u64> {
    Ok(form_hash(&canonicalize(g)?))
}

pub fn form_hash<L: Hash>(form: &CanonicalForm<L>) -> u64 {
    let mut h = Fnv1a::default();
    form.hash(&mut h);
    h.finish()
}

struct Fnv1a(u64);

impl Default for Fnv1a {
    fn default() -> Self {
        Fnv1a(0xcbf2_9ce4_8422_2325)
    }
}

impl Hasher for Fnv1a {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }
}

// Port reference inside a token: boundary index, placed neighbour
// (position, port) or unplaced neighbour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum PortRef {
    Boundary(usize),
    Placed(usize, usize),
    Unplaced,
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Token<'a, L> {
    label: &'a L,
    arity: usize,
    coarity: usize,
    ins: Vec<PortRef>,
    outs: Vec<PortRef>,
}

impl<L> Clone for Token<'_, L> {
    fn clone(&self) -> Self {
        Token {
            label: self.label,
            arity: self.arity,
            coarity: self.coarity,
            ins: self.ins.clone(),
            outs: self.outs.clone(),
        }
    }
}

struct Search<'a, L> {
    labels: Vec<&'a L>,
    arity: Vec<usize>,
    coarity: Vec<usize>,
    // Per vertex index: the source feeding each input port and the target
    // of each output port, with vertices as indices.
    ins: Vec<Vec<(Option<usize>, usize)>>,
    outs: Vec<Vec<(Option<usize>, usize)>>,
    pos: Vec<Option<usize>>,
    best: Option<(Vec<Token<'a, L>>, Vec<usize>)>,
}

impl<'a, L: Ord> Search<'a, L> {
    fn token(&self, v: usize) -> Token<'a, L> {
        let refer = |&(w, port): &(Option<usize>, usize)| match w {
            None => PortRef::Boundary(port),
            Some(w) => match self.pos[w] {
                Some(p) => PortRef::Placed(p, port),
                None => PortRef::Unplaced,
            },
        };
        Token {
            label: self.labels[v],
            arity: self.arity[v],
            coarity: self.coarity[v],
            ins: self.ins[v].iter().map(refer).collect(),
            outs: self.outs[v].iter().map(refer).collect(),
        }
    }

    fn descend(&mut self, placed: &mut Vec<usize>, rest: &mut Vec<usize>, seq: &mut Vec<Token<'a, L>>) {
        if rest.is_empty() {
            let better = match &self.best {
                None => true,
                Some((best, _)) => seq.as_slice() < best.as_slice(),
            };
            if better {
                self.best = Some((seq.clone(), placed.clone()));
            }
            return;
        }
        let tokens: Vec<Token<'a, L>> = rest.iter().map(|&v| self.token(v)).collect();
        let least = tokens.iter().min().expect("rest is non-empty").clone();
        if let Some((best, _)) = &self.best {
            let depth = seq.len();
            let ord = seq.as_slice().cmp(&best[..depth]).then_with(|| least.cmp(&best[depth]));
            if ord == Ordering::Greater {
                return;
            }
        }
        let mut ties: Vec<usize> = rest.iter().zip(&tokens).filter(|(_, t)| **t == least).map(|(&v, _)| v).collect();
        // A vertex whose neighbours are all placed is referenced by no
        // pending token, so tied choices of such vertices are equivalent.
        if !least.ins.iter().chain(&least.outs).any(|r| *r == PortRef::Unplaced) {
            ties.truncate(1);
        }
        for v in ties {
            let at = rest.iter().position(|&x| x == v).expect("candidate is pending");
            rest.remove(at);
            self.pos[v] = Some(placed.len());
            placed.push(v);
            seq.push(least.clone());
            self.descend(placed, rest, seq);
            seq.pop();
            placed.pop();
            self.pos[v] = None;
            rest.insert(at, v);
        }
    }
}

fn search_order<L: Ord>(g: &Graph<L>, prefix: Vec<VertexId>, rest: Vec<VertexId>) -> Vec<VertexId> {
    let ids: Vec<VertexId> = g.vertices().keys().copied().collect();
    let index = |id: VertexId| ids.binary_search(&id).expect("vertex id");
    let wiring = g.wiring();
    let mut search = Search {
        labels: Vec::with_capacity(ids.len()),
        arity: Vec::with_capacity(ids.len()),
        coarity: Vec::with_capacity(ids.len()),
        ins: Vec::with_capacity(ids.len()),
        outs: Vec::with_capacity(ids.len()),
        pos: vec![None; ids.len()],
        best: None,
    };
    for (&id, v) in g.vertices() {
        search.labels.push(&v.label);
        search.arity.push(v.arity);
        search.coarity.push(v.coarity);
        search.ins.push(
            (1..=v.arity)
                .map(|k| match wiring.source_of[&Target::VertexIn(id, k)] {
                    Source::Input(i) => (None, i),
                    Source::VertexOut(u, j) => (Some(index(u)), j),
                })
                .collect(),
        );
        search.outs.push(
            (1..=v.coarity)
                .map(|k| match wiring.target_of[&Source::VertexOut(id, k)] {
                    Target::Output(j) => (None, j),
                    Target::VertexIn(w, i) => (Some(index(w)), i),
                })
                .collect(),
        );
    }
    let prefix: Vec<usize> = prefix.iter().map(|&v| index(v)).collect();
    for (p, &v) in prefix.iter().enumerate() {
        search.pos[v] = Some(p);
    }
    let mut blocks: Vec<(Vec<Token<'_, L>>, Vec<usize>)> = Vec::new();
    for component in components(&search, rest.iter().map(|&v| index(v)).collect()) {
        let mut placed = prefix.clone();
        let mut pending = component;
        search.best = None;
        search.descend(&mut placed, &mut pending, &mut Vec::new());
        let (tokens, order) = search.best.take().expect("search visits at least one leaf");
        blocks.push((tokens, order[prefix.len()..].to_vec()));
    }
    blocks.sort_by(|a, b| a.0.cmp(&b.0));
    prefix.into_iter().chain(blocks.into_iter().flat_map(|(_, order)| order)).map(|i| ids[i]).collect()
}

/// Connected components of `rest` under the edges between its vertices.
fn components<L>(search: &Search<'_, L>, rest: Vec<usize>) -> Vec<Vec<usize>> {
    let mut in_rest = vec![false; search.pos.len()];
    for &v in &rest {
        in_rest[v] = true;
    }
    let mut out = Vec::new();
    for &start in &rest {
        if !in_rest[start] {
            continue;
        }
        in_rest[start] = false;
        let mut stack = vec![start];
        let mut component = Vec::new();
        while let Some(v) = stack.pop() {
            component.push(v);
            for &(w, _) in search.ins[v].iter().chain(&search.outs[v]) {
                if let Some(w) = w {
                    if std::mem::replace(&mut in_rest[w], false) {
                        stack.push(w);
                    }
                }
            }
        }
        component.sort_unstable();
        out.push(component);
    }
    out
}
