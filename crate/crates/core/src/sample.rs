//! Random graphs and elements for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::free_prop::{PropElement, Signature};
use crate::graph::{Edge, Graph, Source, Target, Vertex, VertexId};
use crate::tensor::{AlgebraAssignment, RatTensor, Rational};

/// Wires vertices of the given shapes one after another, each taking its
/// inputs from distinct open wires chosen at random; the remaining open
/// wires become the outputs in random order. Shapes whose arity exceeds
/// the number of open wires are skipped.
fn wire<L, R: Rng + ?Sized>(rng: &mut R, inputs: usize, vertices: Vec<Vertex<L>>) -> Graph<L> {
    let mut open: Vec<Source> = (1..=inputs).map(Source::Input).collect();
    let mut placed = Vec::new();
    let mut edges = Vec::new();
    for vertex in vertices {
        if vertex.arity > open.len() {
            continue;
        }
        let id = placed.len() as VertexId + 1;
        open.shuffle(rng);
        for k in 1..=vertex.arity {
            edges.push(Edge::new(open.pop().expect("enough open wires"), Target::VertexIn(id, k)));
        }
        open.extend((1..=vertex.coarity).map(|k| Source::VertexOut(id, k)));
        placed.push((id, vertex));
    }
    open.shuffle(rng);
    let outputs = open.len();
    edges.extend(open.into_iter().enumerate().map(|(j, s)| Edge::new(s, Target::Output(j + 1))));
    Graph::from_parts(inputs, outputs, placed, edges)
}

/// A random graph over `sig` with `inputs` inputs and at most `vertices`
/// vertices.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, sig: &Signature, inputs: usize, vertices: usize) -> Graph<String> {
    let gens: Vec<_> = sig.generators().collect();
    let mut open = inputs;
    let mut chosen = Vec::new();
    for _ in 0..vertices {
        let fitting: Vec<_> = gens.iter().filter(|g| g.m <= open).collect();
        let Some(g) = fitting.choose(rng) else { break };
        open = open - g.m + g.n;
        chosen.push(Vertex::new(g.m, g.n, g.name.clone()));
    }
    wire(rng, inputs, chosen)
}

pub fn random_element<R: Rng + ?Sized>(rng: &mut R, sig: &Signature, inputs: usize, vertices: usize) -> PropElement {
    PropElement::from_graph(&random_graph(rng, sig, inputs, vertices)).expect("sampled graphs are valid")
}

/// A random graph with exactly the boundary `(inputs, outputs)` whose
/// vertex shapes are drawn freely, with arity and coarity at most
/// `max_degree`, and labeled by `label`. A last vertex collects the open
/// wires when their number is not `outputs`.
pub fn random_shaped<L, R: Rng + ?Sized>(
    rng: &mut R,
    inputs: usize,
    outputs: usize,
    vertices: usize,
    max_degree: usize,
    mut label: impl FnMut(&mut R, usize, usize) -> L,
) -> Graph<L> {
    let count = rng.gen_range(0..=vertices);
    let mut open = inputs;
    let mut shapes = Vec::new();
    for _ in 0..count {
        let a = rng.gen_range(0..=max_degree.min(open));
        let b = rng.gen_range(0..=max_degree);
        open = open - a + b;
        shapes.push((a, b));
    }
    if open != outputs {
        shapes.push((open, outputs));
    }
    let vertices = shapes.into_iter().map(|(a, b)| Vertex::new(a, b, label(rng, a, b))).collect();
    wire(rng, inputs, vertices)
}

/// Name of the free atom of shape `(a, b)` used by [`random_atomic`].
pub fn atom_name(a: usize, b: usize) -> String {
    format!("f{a}{b}")
}

/// A random element with the given boundary over atoms `f{a}{b}`.
pub fn random_atomic<R: Rng + ?Sized>(rng: &mut R, inputs: usize, outputs: usize, vertices: usize) -> PropElement {
    let g = random_shaped(rng, inputs, outputs, vertices, 2, |_, a, b| atom_name(a, b));
    PropElement::from_graph(&g).expect("sampled graphs are valid")
}

/// A random graph of graphs with the given boundary: its vertices carry
/// random atomic elements of matching shape.
pub fn random_nested<R: Rng + ?Sized>(
    rng: &mut R,
    inputs: usize,
    outputs: usize,
    vertices: usize,
) -> Graph<PropElement> {
    random_shaped(rng, inputs, outputs, vertices, 2, |rng, a, b| random_atomic(rng, a, b, vertices))
}

/// Three levels: a graph whose vertices carry graphs of graphs.
pub fn random_nested3<R: Rng + ?Sized>(
    rng: &mut R,
    inputs: usize,
    outputs: usize,
    vertices: usize,
) -> Graph<PropElement<PropElement>> {
    random_shaped(rng, inputs, outputs, vertices, 2, |rng, a, b| {
        PropElement::from_graph(&random_nested(rng, a, b, vertices)).expect("sampled graphs are valid")
    })
}

/// An assignment of random integer matrices with entries in `-2..=2` to
/// the generators of `sig`.
pub fn random_assignment<R: Rng + ?Sized>(rng: &mut R, sig: &Signature, dim: usize) -> AlgebraAssignment {
    let matrices = sig
        .generators()
        .map(|g| (g.name.clone(), random_matrix(rng, dim.pow(g.n as u32), dim.pow(g.m as u32))))
        .collect::<Vec<_>>();
    AlgebraAssignment::new(dim, matrices)
}

/// A random `rows × cols` matrix with integer entries in `-2..=2`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> RatTensor {
    let data = (0..rows * cols).map(|_| Rational::from_integer(rng.gen_range(-2..=2).into())).collect();
    RatTensor::from_data(vec![rows, cols], data).expect("shape matches the data")
}

/// A random pair of elements over `sig` whose horizontal composite has at
/// most `max_boundary` inputs plus outputs. About half of the pairs are
/// vertically composable.
pub fn random_pair<R: Rng + ?Sized>(
    rng: &mut R,
    sig: &Signature,
    vertices: usize,
    max_boundary: usize,
) -> (PropElement, PropElement) {
    loop {
        let inputs = rng.gen_range(0..=2);
        let x = random_element(rng, sig, inputs, vertices);
        let inputs = if rng.gen_bool(0.5) { x.boundary().1 } else { rng.gen_range(0..=2) };
        let y = random_element(rng, sig, inputs, vertices);
        let (a, b) = (x.boundary(), y.boundary());
        if a.0 + a.1 + b.0 + b.1 <= max_boundary {
            return (x, y);
        }
    }
}

/// A random topological order of `g`.
pub fn random_topological_order<L, R: Rng + ?Sized>(rng: &mut R, g: &Graph<L>) -> Vec<VertexId> {
    let successors = g.successors();
    let mut indegree: std::collections::BTreeMap<VertexId, usize> = g.vertices().keys().map(|&v| (v, 0)).collect();
    for targets in successors.values() {
        for w in targets {
            *indegree.get_mut(w).expect("vertex") += 1;
        }
    }
    let mut ready: Vec<VertexId> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
    let mut order = Vec::with_capacity(indegree.len());
    while !ready.is_empty() {
        let v = ready.swap_remove(rng.gen_range(0..ready.len()));
        order.push(v);
        for w in successors.get(&v).into_iter().flatten() {
            let d = indegree.get_mut(w).expect("vertex");
            *d -= 1;
            if *d == 0 {
                ready.push(*w);
            }
        }
    }
    order
}
