//! Graphs with two label alphabets: elements of a prop `P` (here the free
//! prop on opaque atoms) and generators of a free prop.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use crate::canonical::{canonicalize, CanonicalForm};
use crate::error::{Error, Result};
use crate::free_prop::{expand, PropElement};
use crate::graph::{Edge, Graph, Source, Target, Vertex, VertexId};
use crate::json::{Alphabet, DocLabel, GraphDoc, VertexDoc};
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MixedLabel {
    /// An element of `P`, a free prop on atoms.
    P(PropElement),
    /// A generator of the free summand.
    M(String),
}

impl MixedLabel {
    pub fn is_p(&self) -> bool {
        matches!(self, MixedLabel::P(_))
    }
}

pub type MixedGraph = Graph<MixedLabel>;

/// Labels of the expanded free prop on atoms and generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tagged {
    Atom(String),
    Gen(String),
}

impl DocLabel for Tagged {
    fn write(&self, vertex: &mut VertexDoc) {
        let (alphabet, name) = match self {
            Tagged::Atom(a) => (Alphabet::P, a),
            Tagged::Gen(g) => (Alphabet::M, g),
        };
        vertex.label = Some(name.clone());
        vertex.alphabet = Some(alphabet);
    }

    fn read(vertex: &VertexDoc) -> Result<Self> {
        let name = String::read(vertex)?;
        match vertex.alphabet {
            Some(Alphabet::P) => Ok(Tagged::Atom(name)),
            Some(Alphabet::M) => Ok(Tagged::Gen(name)),
            None => Err(Error::Parse(format!("vertex {} has no alphabet", vertex.id))),
        }
    }
}

/// A `P` vertex is written as its atom when its label is a corolla and as
/// an `inner` graph otherwise.
impl DocLabel for MixedLabel {
    fn write(&self, vertex: &mut VertexDoc) {
        match self {
            MixedLabel::M(name) => {
                vertex.label = Some(name.clone());
                vertex.alphabet = Some(Alphabet::M);
            }
            MixedLabel::P(e) => {
                vertex.alphabet = Some(Alphabet::P);
                match corolla_atom(e) {
                    Some(atom) => vertex.label = Some(atom.clone()),
                    None => vertex.inner = Some(Box::new(GraphDoc::from_graph(e.graph()))),
                }
            }
        }
    }

    fn read(vertex: &VertexDoc) -> Result<Self> {
        match vertex.alphabet {
            Some(Alphabet::M) => Ok(MixedLabel::M(String::read(vertex)?)),
            Some(Alphabet::P) => Ok(MixedLabel::P(PropElement::read(vertex)?)),
            None => Err(Error::Parse(format!("vertex {} has no alphabet", vertex.id))),
        }
    }
}

fn corolla_atom(e: &PropElement) -> Option<&String> {
    let (a, b) = e.boundary();
    let v = e.graph().vertex(1)?;
    (e.vertex_count() == 1 && *e == PropElement::corolla(a, b, v.label.clone())).then_some(&v.label)
}

/// Checks that every `P` label has the shape of its vertex.
pub fn check_mixed(g: &MixedGraph) -> Result<()> {
    g.check()?;
    for (&id, v) in g.vertices() {
        if let MixedLabel::P(e) = &v.label {
            if e.boundary() != (v.arity, v.coarity) {
                return Err(Error::BoundaryMismatch(format!(
                    "vertex {id} is a ({}, {})-vertex labeled by a ({}, {})-element",
                    v.arity,
                    v.coarity,
                    e.boundary().0,
                    e.boundary().1
                )));
            }
        }
    }
    Ok(())
}

fn p_vertex(g: &MixedGraph, v: VertexId) -> Result<&PropElement> {
    match g.vertex(v).map(|x| &x.label) {
        Some(MixedLabel::P(e)) => Ok(e),
        _ => Err(Error::NotPVertex(v)),
    }
}

/// True when `u` and `v` can be contracted to one vertex without creating
/// a directed cycle: no directed path joins them through a third vertex.
pub fn mergeable(g: &MixedGraph, u: VertexId, v: VertexId) -> Result<bool> {
    check_mixed(g)?;
    p_vertex(g, u)?;
    p_vertex(g, v)?;
    if u == v {
        return Err(Error::Precondition(format!("cannot merge vertex {u} with itself")));
    }
    let succ = g.successors();
    Ok(!indirect_path(&succ, u, v) && !indirect_path(&succ, v, u))
}

fn indirect_path(succ: &std::collections::BTreeMap<VertexId, Vec<VertexId>>, from: VertexId, to: VertexId) -> bool {
    let mut seen: HashSet<VertexId> = HashSet::new();
    let mut queue: VecDeque<VertexId> = succ[&from].iter().copied().filter(|&w| w != to).collect();
    while let Some(w) = queue.pop_front() {
        if !seen.insert(w) {
            continue;
        }
        for &x in &succ[&w] {
            if x == to {
                return true;
            }
            queue.push_back(x);
        }
    }
    false
}

/// Replaces `u` and `v` by one `P` vertex (keeping the id of `u`) whose
/// label is the two-vertex graph formed by `u`, `v` and the edges between
/// them. Its inputs are the external input ports of `u` then those of `v`;
/// likewise for outputs.
pub fn merge(g: &MixedGraph, u: VertexId, v: VertexId) -> Result<MixedGraph> {
    if !mergeable(g, u, v)? {
        return Err(Error::NotMergeable(u, v));
    }
    let wiring = g.wiring();
    let pair = [u, v];
    let inner_id = |x: VertexId| if x == u { 1 } else { 2 };
    let inside = |x: Option<VertexId>| x.is_some_and(|x| pair.contains(&x));

    let mut ext_in: Vec<(VertexId, usize)> = Vec::new();
    let mut ext_out: Vec<(VertexId, usize)> = Vec::new();
    let mut inner_edges: Vec<Edge> = Vec::new();
    for &x in &pair {
        let vx = g.vertex(x).expect("merged vertex exists");
        for k in 1..=vx.arity {
            match wiring.source_of[&Target::VertexIn(x, k)] {
                Source::VertexOut(y, j) if pair.contains(&y) => {
                    inner_edges.push(Edge::new(Source::VertexOut(inner_id(y), j), Target::VertexIn(inner_id(x), k)))
                }
                _ => {
                    ext_in.push((x, k));
                    inner_edges.push(Edge::new(Source::Input(ext_in.len()), Target::VertexIn(inner_id(x), k)));
                }
            }
        }
        for k in 1..=vx.coarity {
            if !inside(wiring.target_of[&Source::VertexOut(x, k)].vertex()) {
                ext_out.push((x, k));
                inner_edges.push(Edge::new(Source::VertexOut(inner_id(x), k), Target::Output(ext_out.len())));
            }
        }
    }
    let inner: Graph<PropElement> = Graph::from_parts(
        ext_in.len(),
        ext_out.len(),
        pair.iter().map(|&x| {
            let vx = g.vertex(x).expect("merged vertex exists");
            (inner_id(x), Vertex::new(vx.arity, vx.coarity, p_vertex(g, x).expect("P vertex").clone()))
        }),
        inner_edges,
    );
    let label = expand(&inner)?;

    let new_in = |x: VertexId, k: usize| ext_in.iter().position(|&p| p == (x, k)).map(|i| i + 1);
    let new_out = |x: VertexId, k: usize| ext_out.iter().position(|&p| p == (x, k)).map(|i| i + 1);
    let mut edges = Vec::with_capacity(g.edges().len());
    for e in g.edges() {
        if inside(e.src.vertex()) && inside(e.dst.vertex()) {
            continue;
        }
        let src = match e.src {
            Source::VertexOut(x, k) if pair.contains(&x) => Source::VertexOut(u, new_out(x, k).expect("external")),
            s => s,
        };
        let dst = match e.dst {
            Target::VertexIn(x, k) if pair.contains(&x) => Target::VertexIn(u, new_in(x, k).expect("external")),
            t => t,
        };
        edges.push(Edge::new(src, dst));
    }
    let vertices = g.vertices().iter().filter(|(&id, _)| id != v).map(|(&id, x)| {
        if id == u {
            (u, Vertex::new(ext_in.len(), ext_out.len(), MixedLabel::P(label.clone())))
        } else {
            (id, x.clone())
        }
    });
    let merged = Graph::from_parts(g.inputs(), g.outputs(), vertices, edges);
    debug_assert!(merged.is_valid());
    Ok(merged)
}

/// Replaces every `P` vertex by the graph of its label: the image of the
/// mixed graph in the free prop on atoms and generators.
pub fn expand_all(g: &MixedGraph) -> Result<PropElement<Tagged>> {
    check_mixed(g)?;
    let flat = g.substitute(|_, v| {
        Ok(match &v.label {
            MixedLabel::P(e) => e.graph().map_labels(|_, a| Tagged::Atom(a.clone())),
            MixedLabel::M(name) => PropElement::corolla(v.arity, v.coarity, Tagged::Gen(name.clone())).graph().clone(),
        })
    })?;
    PropElement::from_graph(&flat)
}

/// Renumbers the ports of vertex `x`: new input port `k` is old input port
/// `sigma(k)` and new output port `k` is old output port `tau(k)`. A `P`
/// label is permuted along, so the graph denotes the same element.
pub fn reorder_ports(g: &MixedGraph, x: VertexId, sigma: &Perm, tau: &Perm) -> Result<MixedGraph> {
    let vx = g.vertex(x).ok_or(Error::NotPVertex(x))?;
    let e = p_vertex(g, x)?;
    if sigma.len() != vx.arity || tau.len() != vx.coarity {
        return Err(Error::PermutationSize { expected: vx.arity, found: sigma.len() });
    }
    let label = e.permute_inputs(sigma)?.permute_outputs(&tau.inverse())?;
    let (si, ti) = (sigma.inverse(), tau.inverse());
    let edges = g.edges().iter().map(|e| {
        let src = match e.src {
            Source::VertexOut(y, k) if y == x => Source::VertexOut(x, ti.apply(k - 1) + 1),
            s => s,
        };
        let dst = match e.dst {
            Target::VertexIn(y, k) if y == x => Target::VertexIn(x, si.apply(k - 1) + 1),
            t => t,
        };
        Edge::new(src, dst)
    });
    let vertices = g.vertices().iter().map(|(&id, v)| {
        if id == x {
            (id, Vertex::new(v.arity, v.coarity, MixedLabel::P(label.clone())))
        } else {
            (id, v.clone())
        }
    });
    Ok(Graph::from_parts(g.inputs(), g.outputs(), vertices, edges.collect::<Vec<_>>()))
}

/// Largest number of port renumberings [`normal_form`] will try, per
/// vertex and in total.
pub const MAX_PORT_ORBIT: usize = 1 << 16;

/// The port renumberings of `P` vertex `x` that list its ports by
/// boundary colour of the label and, among those, make the permuted label
/// least. They form one coset of the stabilizer of the least label.
fn least_renumberings(g: &MixedGraph, x: VertexId) -> Result<Vec<(Perm, Perm)>> {
    let e = p_vertex(g, x)?;
    let (in_colours, out_colours) = boundary_colours(e);
    let (sigmas, taus) = (colour_orders(&in_colours), colour_orders(&out_colours));
    let orbit = sigmas.len().saturating_mul(taus.len());
    if orbit > MAX_PORT_ORBIT {
        return Err(Error::ResourceLimit(format!("{orbit} port renumberings of vertex {x}")));
    }
    let mut least: Option<PropElement> = None;
    let mut out = Vec::new();
    for sigma in &sigmas {
        let by_inputs = e.permute_inputs(sigma)?;
        for tau in &taus {
            let label = by_inputs.permute_outputs(&tau.inverse())?;
            match least.as_ref().map(|l| label.cmp(l)) {
                Some(std::cmp::Ordering::Greater) => continue,
                Some(std::cmp::Ordering::Equal) => out.push((sigma.clone(), tau.clone())),
                _ => {
                    least = Some(label);
                    out = vec![(sigma.clone(), tau.clone())];
                }
            }
        }
    }
    Ok(out)
}

/// Colours of the inputs and outputs of `e` that do not depend on how the
/// boundary is numbered, by colour refinement of the vertices.
fn boundary_colours(e: &PropElement) -> (Vec<u64>, Vec<u64>) {
    let g = e.graph();
    let wiring = g.wiring();
    let hash = |x: &dyn Fn(&mut DefaultHasher)| {
        let mut h = DefaultHasher::new();
        x(&mut h);
        h.finish()
    };
    let mut colour: BTreeMap<VertexId, u64> =
        g.vertices().iter().map(|(&id, v)| (id, hash(&|h| (&v.label, v.arity, v.coarity).hash(h)))).collect();
    let source_colour = |colour: &BTreeMap<VertexId, u64>, s: Source| match s {
        Source::Input(_) => (u64::MAX, 0),
        Source::VertexOut(u, j) => (colour[&u], j),
    };
    let target_colour = |colour: &BTreeMap<VertexId, u64>, t: Target| match t {
        Target::Output(_) => (u64::MAX, 0),
        Target::VertexIn(w, k) => (colour[&w], k),
    };
    for _ in 0..g.vertex_count() {
        let next: BTreeMap<VertexId, u64> = g
            .vertices()
            .iter()
            .map(|(&id, v)| {
                let ins: Vec<(u64, usize)> =
                    (1..=v.arity).map(|k| source_colour(&colour, wiring.source_of[&Target::VertexIn(id, k)])).collect();
                let outs: Vec<(u64, usize)> = (1..=v.coarity)
                    .map(|k| target_colour(&colour, wiring.target_of[&Source::VertexOut(id, k)]))
                    .collect();
                (id, hash(&|h| (colour[&id], &ins, &outs).hash(h)))
            })
            .collect();
        let stable = next.values().collect::<BTreeSet<_>>().len() == colour.values().collect::<BTreeSet<_>>().len();
        colour = next;
        if stable {
            break;
        }
    }
    let through = u64::MAX - 1;
    let inputs = (1..=g.inputs())
        .map(|i| match wiring.target_of[&Source::Input(i)] {
            Target::Output(_) => through,
            t => hash(&|h| target_colour(&colour, t).hash(h)),
        })
        .collect();
    let outputs = (1..=g.outputs())
        .map(|j| match wiring.source_of[&Target::Output(j)] {
            Source::Input(_) => through,
            s => hash(&|h| source_colour(&colour, s).hash(h)),
        })
        .collect();
    (inputs, outputs)
}

/// Every ordering of `0..colours.len()` that lists positions by increasing
/// colour, as permutations sending new position `k` to old position.
fn colour_orders(colours: &[u64]) -> Vec<Perm> {
    let mut sorted: Vec<usize> = (0..colours.len()).collect();
    sorted.sort_by_key(|&i| colours[i]);
    let mut orders = vec![Vec::with_capacity(colours.len())];
    let mut start = 0;
    while start < sorted.len() {
        let end = (start..sorted.len()).find(|&k| colours[sorted[k]] != colours[sorted[start]]).unwrap_or(sorted.len());
        let block = &sorted[start..end];
        if factorial(block.len()).saturating_mul(orders.len()) > MAX_PORT_ORBIT {
            // Reported by the caller through the orbit size.
            return vec![Perm::identity(colours.len()); MAX_PORT_ORBIT + 1];
        }
        orders = orders
            .into_iter()
            .flat_map(|prefix| {
                Perm::all(block.len()).into_iter().map(move |p| {
                    let mut o = prefix.clone();
                    o.extend(p.images().iter().map(|&i| block[i]));
                    o
                })
            })
            .collect();
        start = end;
    }
    orders.into_iter().map(|o| Perm::new(o).expect("orderings are permutations")).collect()
}

fn factorial(n: usize) -> usize {
    (1..=n).fold(1usize, |acc, k| acc.saturating_mul(k))
}

/// Canonical form of a mixed graph up to isomorphism and up to the
/// symmetric-group action on the ports of `P` vertices.
///
/// Each `P` vertex is first renumbered so that its ports are listed by a
/// numbering-independent colour and its label is least; the renumberings
/// doing so differ by symmetries of the label, and the result is the least
/// canonical form over all combinations of those.
pub fn normal_form(g: &MixedGraph) -> Result<CanonicalForm<MixedLabel>> {
    check_mixed(g)?;
    let mut choices: Vec<(VertexId, Vec<(Perm, Perm)>)> = Vec::new();
    let mut total = 1usize;
    for (&id, v) in g.vertices() {
        if v.label.is_p() && (v.arity > 1 || v.coarity > 1) {
            let least = least_renumberings(g, id)?;
            total = total.saturating_mul(least.len());
            choices.push((id, least));
        }
    }
    if total > MAX_PORT_ORBIT {
        return Err(Error::ResourceLimit(format!("{total} port renumberings to compare")));
    }
    let mut best: Option<CanonicalForm<MixedLabel>> = None;
    let mut stack: Vec<(usize, MixedGraph)> = vec![(0, g.clone())];
    while let Some((i, h)) = stack.pop() {
        if i == choices.len() {
            let c = canonicalize(&h)?;
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
            continue;
        }
        let (x, least) = &choices[i];
        for (sigma, tau) in least {
            stack.push((i + 1, reorder_ports(&h, *x, sigma, tau)?));
        }
    }
    Ok(best.expect("at least one renumbering"))
}

/// Unordered pairs of `P` vertices that can be merged, by increasing ids.
pub fn mergeable_pairs(g: &MixedGraph) -> Result<Vec<(VertexId, VertexId)>> {
    let ps: BTreeSet<VertexId> = g.vertices().iter().filter(|(_, v)| v.label.is_p()).map(|(&id, _)| id).collect();
    let mut out = Vec::new();
    for &u in &ps {
        for &v in ps.range(u + 1..) {
            if mergeable(g, u, v)? {
                out.push((u, v));
            }
        }
    }
    Ok(out)
}
